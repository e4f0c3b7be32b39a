#pragma once

// Exact rational arithmetic over Q on top of GMP, plus the handful of
// valuation/height primitives the rest of the toolkit is built on.
//
// BigRat is always kept in lowest terms with a positive denominator
// (mpq_class canonical form), so num/den are directly usable in
// divisibility arguments.

#include <optional>
#include <string>

#include <gmpxx.h>

#include "orbitobs/errors.hpp"

namespace orbitobs {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline const BigInt& num(const BigRat& x) { return x.get_num(); }
inline const BigInt& den(const BigRat& x) { return x.get_den(); }

// mpq_class(n, d) does not canonicalize; every ratio built from raw
// integers must go through here.
inline BigRat make_rat(const BigInt& n, const BigInt& d) {
    if (d == 0) throw Error(ErrorKind::invalid_input, "zero denominator");
    BigRat x(n, d);
    x.canonicalize();
    return x;
}

// Parse "a" or "a/b" (arbitrary precision, base 10). Throws on malformed
// input or b = 0.
BigRat parse_rational(const std::string& text);

std::string to_string(const BigInt& n);
std::string to_string(const BigRat& x);

// v_p(num) - v_p(den). Throws ZeroInput for x = 0.
long v_adic_valuation(const BigRat& x, const BigInt& p);

// Exponent of p in n (n != 0).
long int_valuation(const BigInt& n, const BigInt& p);

// max(|num|, den); the integer whose log is the Weil height. h(0) = 0 is
// handled by the convention height_base(0) = 1.
BigInt height_base(const BigRat& x);

// log max(|num|, den), natural log. Accurate for huge integers via
// mpz_get_d_2exp.
double weil_height(const BigRat& x);
double log_of(const BigInt& n);

// Over Q the only roots of unity are +-1. Throws ZeroInput for x = 0.
bool is_root_of_unity(const BigRat& x);

// x^e for e >= 0 (exact; lowest terms are preserved by powering).
BigRat pow_rat(const BigRat& x, unsigned long e);
BigInt pow_int(const BigInt& b, unsigned long e);

// b^e mod m (e >= 0, m >= 1).
BigInt powmod(const BigInt& b, const BigInt& e, const BigInt& m);

// Residue of x = a/b mod p, i.e. a * b^{-1} mod p. Throws
// BadReductionPrime if p divides num or den.
BigInt residue_mod(const BigRat& x, const BigInt& p);

// Smallest e >= 0 with base^e == target, if one exists (base >= 2,
// target >= 1).
std::optional<unsigned long> integer_log(const BigInt& base, const BigInt& target);

// Exact test x^e == y without assuming e is small enough to be
// interesting: heights are compared first, the power is only formed when
// the height equation already holds.
bool pow_equals(const BigRat& x, unsigned long e, const BigRat& y);

} // namespace orbitobs
