#include "orbitobs/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitobs {

BigRat parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    BigInt n, d = 1;
    try {
        if (slash == std::string::npos) {
            n = BigInt(text);
        } else {
            n = BigInt(text.substr(0, slash));
            d = BigInt(text.substr(slash + 1));
        }
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::invalid_input, "malformed rational: '" + text + "'");
    }
    if (d == 0) throw Error(ErrorKind::invalid_input, "zero denominator in '" + text + "'");
    BigRat x(n, d);
    x.canonicalize();
    return x;
}

std::string to_string(const BigInt& n) { return n.get_str(); }

std::string to_string(const BigRat& x) {
    if (den(x) == 1) return num(x).get_str();
    return num(x).get_str() + "/" + den(x).get_str();
}

long int_valuation(const BigInt& n, const BigInt& p) {
    if (n == 0) throw ZeroInput("valuation of zero");
    BigInt r = abs(n);
    long v = 0;
    while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

long v_adic_valuation(const BigRat& x, const BigInt& p) {
    if (x == 0) throw ZeroInput("v_p of zero");
    return int_valuation(num(x), p) - int_valuation(den(x), p);
}

BigInt height_base(const BigRat& x) {
    if (x == 0) return 1;
    BigInt a = abs(num(x));
    return a >= den(x) ? a : den(x);
}

double log_of(const BigInt& n) {
    signed long exp2;
    const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double weil_height(const BigRat& x) {
    BigInt h = height_base(x);
    if (h == 1) return 0.0;
    return log_of(h);
}

bool is_root_of_unity(const BigRat& x) {
    if (x == 0) throw ZeroInput("root-of-unity test on zero");
    return x == 1 || x == -1;
}

BigRat pow_rat(const BigRat& x, unsigned long e) {
    BigRat r;
    mpz_pow_ui(r.get_num_mpz_t(), num(x).get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), den(x).get_mpz_t(), e);
    // already in lowest terms: gcd(a,b)=1 implies gcd(a^e,b^e)=1
    return r;
}

BigInt pow_int(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

BigInt powmod(const BigInt& b, const BigInt& e, const BigInt& m) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt residue_mod(const BigRat& x, const BigInt& p) {
    if (mpz_divisible_p(den(x).get_mpz_t(), p.get_mpz_t()))
        throw BadReductionPrime("p=" + p.get_str() + " divides denominator of " + to_string(x));
    BigInt dinv;
    if (!mpz_invert(dinv.get_mpz_t(), den(x).get_mpz_t(), p.get_mpz_t()))
        throw BadReductionPrime("denominator of " + to_string(x) + " not invertible mod " + p.get_str());
    BigInt r = (num(x) % p) * dinv % p;
    if (r < 0) r += p;
    return r;
}

std::optional<unsigned long> integer_log(const BigInt& base, const BigInt& target) {
    if (base < 2 || target < 1) return std::nullopt;
    if (target == 1) return 0;
    // e is bounded by bitlen(target), so a guess from doubles plus an exact
    // check of the neighbors is both fast and safe.
    const double guess = log_of(target) / log_of(base);
    const long center = std::lround(guess);
    for (long e = std::max(0L, center - 2); e <= center + 2; ++e) {
        if (pow_int(base, static_cast<unsigned long>(e)) == target)
            return static_cast<unsigned long>(e);
    }
    return std::nullopt;
}

bool pow_equals(const BigRat& x, unsigned long e, const BigRat& y) {
    if (x == 0 || e == 0) return (e == 0 ? BigRat(1) : x) == y;
    // necessary height condition: height_base(x)^e == height_base(y)
    const auto elog = integer_log(height_base(x), height_base(y));
    if (height_base(x) == 1) {
        // x is +-1; cheap sign arithmetic
        if (x == 1) return y == 1;
        return y == ((e % 2 == 0) ? BigRat(1) : BigRat(-1));
    }
    if (!elog || *elog != e) return false;
    return pow_rat(x, e) == y;
}

} // namespace orbitobs
