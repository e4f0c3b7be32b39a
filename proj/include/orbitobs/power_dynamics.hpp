#pragma once

// Power-map dynamics on P^2(Q): orbits of phi([X,Y,Z]) = [X^d,Y^d,Z^d],
// torus-translate curves A X^k = B Y^l, lines A X + B Y + C Z = 0, and
// the exact decision procedures behind the trichotomy and line-case
// verdicts.
//
// Orbit points are never materialized to decide membership: phi^n(P) is
// kept as base coordinates plus the exponent e = d^n, and membership
// reduces to rho^e == target, decided through exact height comparisons
// (h(rho^e) = e * h(rho) holds exactly over Q in lowest terms).

#include <optional>
#include <variant>
#include <vector>

#include "orbitobs/rational.hpp"

namespace orbitobs {

struct ProjPoint2 {
    BigInt x, y, z;

    // canonicalizes: divides by gcd, makes the first nonzero coordinate
    // positive; throws on [0,0,0]
    ProjPoint2(BigInt x0, BigInt y0, BigInt z0);

    bool operator==(const ProjPoint2&) const = default;
};

struct PowerMap {
    unsigned long d;

    explicit PowerMap(unsigned long d0) : d(d0) {
        if (d < 2) throw Error(ErrorKind::invalid_input, "power map needs d >= 2");
    }
};

struct TorusCurve {
    BigRat A, B;
    unsigned long k = 1, l = 1;

    TorusCurve(BigRat A0, BigRat B0, unsigned long k0, unsigned long l0);
};

struct LineCurve {
    BigRat A, B, C;

    LineCurve(BigRat A0, BigRat B0, BigRat C0);
};

// Replayable record of one exponential equation base^e == target solved
// through heights: at most one e can work, and e must be a power of d.
struct HeightEquation {
    BigRat base;
    BigRat target;
    std::optional<unsigned long> exponent_e; // e with height(base)^e == height(target)
    std::optional<unsigned long> solution_n; // n with d^n == e and base^e == target exactly

    bool operator==(const HeightEquation&) const = default;
};

enum class TrichotomyBranch {
    main_chart,       // alpha*beta*gamma != 0, dehomogenized at Z
    gamma_zero_chart, // gamma = 0, dehomogenized at Y
    beta_zero,        // P = [alpha, 0, 1]
    alpha_zero,       // P = [0, beta, 1]
    zero_coefficient, // A*B = 0 with no orbit point on the coordinate line
};

struct TrichotomyCaseI {
    std::vector<unsigned long> exponents; // complete for ALL n, not just a scanned range
    TrichotomyBranch branch;
    std::optional<BigRat> rho;    // alpha^k/beta^l in the chart, when defined
    std::optional<BigRat> target; // B/A
    std::vector<HeightEquation> equations;

    bool operator==(const TrichotomyCaseI&) const = default;
};

struct TrichotomyCaseII {
    unsigned long entry_r = 0;    // minimal r >= 0 with phi^r(P) on V
    unsigned long preperiod_i = 0;
    unsigned long period_q = 1;   // phi^(i+q)(V) = phi^i(V)
    TrichotomyBranch branch;
    std::optional<BigRat> rho;
    std::optional<BigRat> target;

    bool operator==(const TrichotomyCaseII&) const = default;
};

using TrichotomyVerdict = std::variant<TrichotomyCaseI, TrichotomyCaseII>;

struct OrbitIntersection {
    std::vector<unsigned long> exponents; // n <= n_check with phi^n(P) on V
    bool complete_for_all_n = false;      // true when a CaseI verdict certifies the scan
    std::optional<TrichotomyVerdict> verdict;

    bool operator==(const OrbitIntersection&) const = default;
};

struct LineIntersection {
    std::vector<unsigned long> exponents; // complete for ALL n
    char hypothesis = 'a';                // 'a' preperiodic ratio, 'b' zero coordinate
    std::vector<HeightEquation> equations;

    bool operator==(const LineIntersection&) const = default;
};

ProjPoint2 power_map_apply(const ProjPoint2& P, const PowerMap& phi);

// [P, phi(P), ..., phi^{n_max}(P)], materialized. Coordinates grow like
// d^n, so a bit-length cap guards materialization (CoordinateOverflow).
std::vector<ProjPoint2> orbit(const ProjPoint2& P, const PowerMap& phi, unsigned long n_max,
                              unsigned long coordinate_bit_cap = 1ul << 20);

// Over Q: the orbit is finite iff all nonzero coordinates share one
// magnitude (every pairwise ratio is +-1).
bool point_preperiodic(const ProjPoint2& P, const PowerMap& phi);

// Chart-wise membership: Z != 0 tests A(x/z)^k = B(y/z)^l; Z = 0, Y != 0
// tests A(x/y)^k = B; [1,0,0] lies on V iff A = 0.
bool on_torus_curve(const ProjPoint2& P, const TorusCurve& V);

// Membership of the coordinatewise e-th power of P (e >= 1), without
// materializing it.
bool on_torus_curve_at_power(const ProjPoint2& P, const TorusCurve& V, const BigInt& e);

bool on_line_at_power(const ProjPoint2& P, const LineCurve& L, const BigInt& e);

// Some(i, q) iff B/A is a root of unity (coordinate lines A*B = 0 are
// fixed: (0,1)); the parameter orbit [A^{d^n}, B^{d^n}] is walked
// directly.
std::optional<std::pair<unsigned long, unsigned long>> curve_preperiodic(const TorusCurve& V,
                                                                         const PowerMap& phi);

// The Theorem-2 decision procedure. Throws PreperiodicPoint when the
// orbit of P is finite.
TrichotomyVerdict torus_trichotomy(const ProjPoint2& P, const TorusCurve& V, const PowerMap& phi);

// Direct scan of n <= n_check, plus the CaseI completeness certificate
// when the trichotomy applies. The scan is cross-checked against the
// certified set; disagreement is an internal invariant violation.
OrbitIntersection orbit_torus_intersection(const ProjPoint2& P, const TorusCurve& V,
                                           const PowerMap& phi, unsigned long n_check);

// The Theorem-6 line case: requires A*B*C != 0 and hypothesis (a) (some
// coordinate ratio is +-1) or (b) (some coordinate is zero); otherwise
// UnsupportedCase.
LineIntersection line_orbit_intersection(const ProjPoint2& P, const LineCurve& L,
                                         const PowerMap& phi);

// Exact x^e == y with a bignum exponent; heights are compared first so
// the power is never formed unless it must match.
bool pow_equals_big(const BigRat& x, const BigInt& e, const BigRat& y);

// Minimal r >= 0 with base^{d^r} == target, for base a root of unity
// (the value orbit is finite).
std::optional<unsigned long> match_in_power_orbit(const BigRat& base, const BigRat& target,
                                                  const PowerMap& phi);

} // namespace orbitobs
