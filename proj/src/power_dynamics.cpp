#include "orbitobs/power_dynamics.hpp"

#include <algorithm>
#include <map>

namespace orbitobs {

ProjPoint2::ProjPoint2(BigInt x0, BigInt y0, BigInt z0) : x(std::move(x0)), y(std::move(y0)), z(std::move(z0)) {
    if (x == 0 && y == 0 && z == 0)
        throw Error(ErrorKind::invalid_input, "[0,0,0] is not a projective point");
    BigInt g = gcd(gcd(abs(x), abs(y)), abs(z));
    if (g > 1) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    }
    const BigInt& lead = (x != 0) ? x : (y != 0) ? y : z;
    if (lead < 0) {
        x = -x;
        y = -y;
        z = -z;
    }
}

TorusCurve::TorusCurve(BigRat A0, BigRat B0, unsigned long k0, unsigned long l0)
    : A(std::move(A0)), B(std::move(B0)), k(k0), l(l0) {
    if (A == 0 && B == 0) throw Error(ErrorKind::invalid_input, "torus curve needs (A,B) != (0,0)");
    if (k < 1 || l < 1) throw Error(ErrorKind::invalid_input, "torus curve needs k,l >= 1");
}

LineCurve::LineCurve(BigRat A0, BigRat B0, BigRat C0)
    : A(std::move(A0)), B(std::move(B0)), C(std::move(C0)) {
    if (A == 0 && B == 0 && C == 0)
        throw Error(ErrorKind::invalid_input, "line needs (A,B,C) != (0,0,0)");
}

ProjPoint2 power_map_apply(const ProjPoint2& P, const PowerMap& phi) {
    return {pow_int(P.x, phi.d), pow_int(P.y, phi.d), pow_int(P.z, phi.d)};
}

namespace {

// c^e for a bignum exponent; magnitudes <= 1 never grow, so only real
// growth forces e into a machine word.
BigInt coord_pow(const BigInt& c, const BigInt& e) {
    if (c == 0) return 0;
    if (c == 1) return 1;
    if (c == -1) return mpz_even_p(e.get_mpz_t()) ? 1 : -1;
    if (!mpz_fits_ulong_p(e.get_mpz_t()))
        throw CoordinateOverflow("orbit exponent does not fit a machine word");
    return pow_int(c, e.get_ui());
}

} // namespace

std::vector<ProjPoint2> orbit(const ProjPoint2& P, const PowerMap& phi, unsigned long n_max,
                              unsigned long coordinate_bit_cap) {
    unsigned long grow_bits = 0; // bit length of the widest coordinate that actually grows
    for (const BigInt* c : {&P.x, &P.y, &P.z})
        if (abs(*c) >= 2) grow_bits = std::max(grow_bits, mpz_sizeinbase(c->get_mpz_t(), 2));
    std::vector<ProjPoint2> out;
    out.reserve(n_max + 1);
    BigInt e = 1;
    for (unsigned long n = 0; n <= n_max; ++n) {
        if (grow_bits > 0 && e * grow_bits > coordinate_bit_cap)
            throw CoordinateOverflow("coordinate bit length would exceed cap at n=" +
                                     std::to_string(n));
        out.emplace_back(coord_pow(P.x, e), coord_pow(P.y, e), coord_pow(P.z, e));
        e *= phi.d;
    }
    return out;
}

bool point_preperiodic(const ProjPoint2& P, const PowerMap&) {
    BigInt mag = 0;
    for (const BigInt* c : {&P.x, &P.y, &P.z}) {
        if (*c == 0) continue;
        BigInt a = abs(*c);
        if (mag == 0)
            mag = a;
        else if (a != mag)
            return false;
    }
    return true;
}

bool pow_equals_big(const BigRat& x, const BigInt& e, const BigRat& y) {
    if (e == 0) return y == 1;
    if (x == 0) return y == 0;
    if (x == 1) return y == 1;
    if (x == -1) return y == (mpz_even_p(e.get_mpz_t()) ? 1 : -1);
    const auto elog = integer_log(height_base(x), height_base(y));
    if (!elog || BigInt(*elog) != e) return false;
    return pow_rat(x, *elog) == y;
}

bool on_torus_curve_at_power(const ProjPoint2& P, const TorusCurve& V, const BigInt& e) {
    if (e < 1) throw Error(ErrorKind::invalid_input, "membership exponent e >= 1 required");
    if (P.z != 0) {
        if (V.A == 0) return P.y == 0;
        if (V.B == 0) return P.x == 0;
        if (P.x == 0 || P.y == 0) return P.x == 0 && P.y == 0;
        const BigRat rho = pow_rat(make_rat(P.x, P.z), V.k) / pow_rat(make_rat(P.y, P.z), V.l);
        return pow_equals_big(rho, e, V.B / V.A);
    }
    if (P.y != 0) {
        if (V.A == 0) return false; // V is Y = 0
        if (V.B == 0) return P.x == 0;
        if (P.x == 0) return false;
        const BigRat rho = pow_rat(make_rat(P.x, P.y), V.k);
        return pow_equals_big(rho, e, V.B / V.A);
    }
    return V.A == 0; // P = [1,0,0]
}

bool on_torus_curve(const ProjPoint2& P, const TorusCurve& V) {
    return on_torus_curve_at_power(P, V, 1);
}

namespace {

// Decides sum_i A_i c_i^e == 0 exactly for any e >= 1.  The terms of
// maximal |c_i| either cancel identically (their signs are +-1 times the
// shared magnitude, so their contribution is K * m^e with K depending
// only on the parity of e) or they dominate every remaining term once
// (m/m2)^e outgrows sum|A_i|/|K|.  Only exponents below that threshold
// ever get materialized.
bool power_sum_vanishes(std::vector<std::pair<BigRat, BigInt>> terms, const BigInt& e) {
    while (!terms.empty()) {
        BigInt m = 0;
        for (const auto& [A, c] : terms) m = std::max(m, BigInt(abs(c)));
        const bool even = mpz_even_p(e.get_mpz_t()) != 0;
        BigRat K = 0;
        std::vector<std::pair<BigRat, BigInt>> rest;
        for (auto& [A, c] : terms) {
            if (abs(c) == m)
                K += (c > 0 || even) ? A : -A;
            else
                rest.push_back({A, c});
        }
        if (K == 0) {
            terms = std::move(rest); // dominant terms cancel for this parity
            continue;
        }
        if (rest.empty()) return false; // sum is K * m^e != 0
        BigInt m2 = 0;
        BigRat bound = 0;
        for (const auto& [A, c] : rest) {
            m2 = std::max(m2, BigInt(abs(c)));
            bound += abs(A);
        }
        const BigRat margin = bound / abs(K);
        const double need = log_of(num(margin)) - log_of(den(margin));
        const double gap = log_of(m) - log_of(m2);
        if (mpz_cmp_d(e.get_mpz_t(), (need + 1.0) / gap) > 0)
            return false; // |K| m^e certainly exceeds the rest
        // e is small enough to evaluate the sum exactly
        const unsigned long eu = e.get_ui();
        if (eu * mpz_sizeinbase(m.get_mpz_t(), 2) > (1ul << 26))
            throw CoordinateOverflow("line membership evaluation would exceed 2^26 bits");
        BigRat sum = 0;
        for (const auto& [A, c] : terms) sum += A * pow_int(c, eu);
        return sum == 0;
    }
    return true; // every term cancelled
}

} // namespace

bool on_line_at_power(const ProjPoint2& P, const LineCurve& L, const BigInt& e) {
    if (e < 1) throw Error(ErrorKind::invalid_input, "membership exponent e >= 1 required");
    std::vector<std::pair<BigRat, BigInt>> terms;
    const BigRat* coeff[3] = {&L.A, &L.B, &L.C};
    const BigInt* coord[3] = {&P.x, &P.y, &P.z};
    for (int i = 0; i < 3; ++i)
        if (*coord[i] != 0 && *coeff[i] != 0) terms.push_back({*coeff[i], *coord[i]});
    return power_sum_vanishes(std::move(terms), e);
}

std::optional<unsigned long> match_in_power_orbit(const BigRat& base, const BigRat& target,
                                                  const PowerMap& phi) {
    std::map<BigRat, unsigned long> seen;
    BigRat v = base;
    for (unsigned long r = 0;; ++r) {
        if (v == target) return r;
        if (seen.count(v)) return std::nullopt; // cycle closed without a match
        seen.emplace(v, r);
        v = pow_rat(v, phi.d);
        if (r > 64) throw InternalInvariantViolation("power orbit failed to close");
    }
}

std::optional<std::pair<unsigned long, unsigned long>> curve_preperiodic(const TorusCurve& V,
                                                                         const PowerMap& phi) {
    if (V.A == 0 || V.B == 0) return std::make_pair(0ul, 1ul); // coordinate line, fixed by phi
    const BigRat ratio = V.B / V.A;
    if (!is_root_of_unity(ratio)) return std::nullopt;
    std::map<BigRat, unsigned long> seen;
    BigRat v = ratio;
    for (unsigned long n = 0;; ++n) {
        auto it = seen.find(v);
        if (it != seen.end()) return std::make_pair(it->second, n - it->second);
        seen.emplace(v, n);
        v = pow_rat(v, phi.d);
        if (n > 64) throw InternalInvariantViolation("parameter orbit failed to close");
    }
}

namespace {

// Single candidate n >= n_min with base^{d^n} == target, base not a root
// of unity. h(base) > 0 makes d^n * h(base) = h(target) have at most one
// solution, which is then verified exactly.
std::optional<unsigned long> solve_height_equation(const BigRat& base, const BigRat& target,
                                                   unsigned long d, unsigned long n_min,
                                                   std::vector<HeightEquation>& equations) {
    HeightEquation eq{base, target, std::nullopt, std::nullopt};
    const auto e = integer_log(height_base(base), height_base(target));
    if (e && *e >= 1) {
        eq.exponent_e = *e;
        const auto n = integer_log(BigInt(d), BigInt(*e));
        if (n && *n >= n_min && pow_rat(base, *e) == target) eq.solution_n = *n;
    }
    equations.push_back(eq);
    return equations.back().solution_n;
}

TrichotomyCaseI empty_case_i(TrichotomyBranch branch) {
    return TrichotomyCaseI{{}, branch, std::nullopt, std::nullopt, {}};
}

} // namespace

TrichotomyVerdict torus_trichotomy(const ProjPoint2& P, const TorusCurve& V, const PowerMap& phi) {
    if (point_preperiodic(P, phi))
        throw PreperiodicPoint("the orbit of the given point is finite");

    const BigInt &a = P.x, &b = P.y, &g = P.z;

    if (g != 0 && a != 0 && b != 0) {
        if (V.A == 0 || V.B == 0) return empty_case_i(TrichotomyBranch::zero_coefficient);
        const BigRat rho = pow_rat(make_rat(a, g), V.k) / pow_rat(make_rat(b, g), V.l);
        const BigRat target = V.B / V.A;
        if (is_root_of_unity(rho)) {
            if (const auto r = match_in_power_orbit(rho, target, phi)) {
                const auto iq = curve_preperiodic(V, phi);
                if (!iq) throw InternalInvariantViolation("matched target but curve not preperiodic");
                return TrichotomyCaseII{*r, iq->first, iq->second, TrichotomyBranch::main_chart,
                                        rho, target};
            }
            // the full value orbit was enumerated and target never occurs
            return TrichotomyCaseI{{}, TrichotomyBranch::main_chart, rho, target, {}};
        }
        TrichotomyCaseI verdict{{}, TrichotomyBranch::main_chart, rho, target, {}};
        if (const auto n = solve_height_equation(rho, target, phi.d, 0, verdict.equations))
            verdict.exponents.push_back(*n);
        return verdict;
    }

    if (g != 0 && b == 0) { // P = [alpha, 0, 1]
        if (V.A == 0) // V is the line Y = 0, fixed by phi; the whole orbit lies on it
            return TrichotomyCaseII{0, 0, 1, TrichotomyBranch::beta_zero, std::nullopt, std::nullopt};
        return empty_case_i(TrichotomyBranch::beta_zero);
    }
    if (g != 0 && a == 0) { // P = [0, beta, 1]
        if (V.B == 0) // V is the line X = 0, fixed by phi
            return TrichotomyCaseII{0, 0, 1, TrichotomyBranch::alpha_zero, std::nullopt, std::nullopt};
        return empty_case_i(TrichotomyBranch::alpha_zero);
    }

    // gamma = 0 with alpha*beta != 0 (a single nonzero coordinate is preperiodic)
    if (V.A == 0 || V.B == 0) return empty_case_i(TrichotomyBranch::gamma_zero_chart);
    const BigRat rho = pow_rat(make_rat(a, b), V.k);
    const BigRat target = V.B / V.A;
    TrichotomyCaseI verdict{{}, TrichotomyBranch::gamma_zero_chart, rho, target, {}};
    if (const auto n = solve_height_equation(rho, target, phi.d, 0, verdict.equations))
        verdict.exponents.push_back(*n);
    return verdict;
}

OrbitIntersection orbit_torus_intersection(const ProjPoint2& P, const TorusCurve& V,
                                           const PowerMap& phi, unsigned long n_check) {
    OrbitIntersection out;
    BigInt e = 1;
    for (unsigned long n = 0; n <= n_check; ++n) {
        if (on_torus_curve_at_power(P, V, e)) out.exponents.push_back(n);
        e *= phi.d;
    }
    if (!point_preperiodic(P, phi)) {
        out.verdict = torus_trichotomy(P, V, phi);
        if (const auto* ci = std::get_if<TrichotomyCaseI>(&*out.verdict)) {
            out.complete_for_all_n = true;
            std::vector<unsigned long> certified;
            for (unsigned long n : ci->exponents)
                if (n <= n_check) certified.push_back(n);
            if (certified != out.exponents)
                throw InternalInvariantViolation("certified CaseI set disagrees with direct scan");
        }
    }
    return out;
}

LineIntersection line_orbit_intersection(const ProjPoint2& P, const LineCurve& L,
                                         const PowerMap& phi) {
    if (L.A == 0 || L.B == 0 || L.C == 0)
        throw UnsupportedCase("a line with a zero coefficient is a torus translate; "
                              "use the trichotomy routine");
    if (point_preperiodic(P, phi)) throw PreperiodicPoint("the orbit of the given point is finite");

    const BigInt* coord[3] = {&P.x, &P.y, &P.z};
    const BigRat* coeff[3] = {&L.A, &L.B, &L.C};
    LineIntersection out;

    int zero_at = -1;
    for (int i = 0; i < 3; ++i)
        if (*coord[i] == 0) zero_at = i;

    if (zero_at >= 0) {
        // hypothesis (b): one coordinate is zero, the other two have a
        // non-root-of-unity ratio (else P would be preperiodic)
        out.hypothesis = 'b';
        const int i = (zero_at == 0) ? 1 : 0;
        const int j = (zero_at == 2) ? 1 : 2;
        const BigRat base = make_rat(*coord[i], *coord[j]);
        const BigRat target = -*coeff[j] / *coeff[i];
        if (const auto n = solve_height_equation(base, target, phi.d, 0, out.equations))
            out.exponents.push_back(*n);
        return out;
    }

    // hypothesis (a): a pair of coordinates with ratio +-1; at most one
    // such pair exists for a non-preperiodic point
    int ui = -1, uj = -1;
    for (int i = 0; i < 3 && ui < 0; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (abs(*coord[i]) == abs(*coord[j])) {
                ui = i;
                uj = j;
                break;
            }
    if (ui < 0)
        throw UnsupportedCase("neither hypothesis applies: no zero coordinate and no "
                              "coordinate ratio is a root of unity");
    const int m = 3 - ui - uj;
    const BigRat x = make_rat(*coord[m], *coord[uj]);
    const BigRat y = make_rat(*coord[ui], *coord[uj]); // +-1
    const BigRat &Am = *coeff[m], &Ai = *coeff[ui], &Aj = *coeff[uj];

    std::vector<unsigned long> found;
    if (y == 1) {
        const BigRat target = -(Aj + Ai) / Am;
        if (target != 0)
            if (const auto n = solve_height_equation(x, target, phi.d, 0, out.equations))
                found.push_back(*n);
    } else if (phi.d % 2 == 1) {
        // y^{d^n} = -1 for every n
        const BigRat target = -(Aj - Ai) / Am;
        if (target != 0)
            if (const auto n = solve_height_equation(x, target, phi.d, 0, out.equations))
                found.push_back(*n);
    } else {
        // d even: y^{d^n} is -1 at n = 0 and +1 for n >= 1
        if (Am * x - Ai + Aj == 0) {
            found.push_back(0);
            out.equations.push_back(HeightEquation{x, -(Aj - Ai) / Am, 1, 0});
        }
        const BigRat target = -(Aj + Ai) / Am;
        if (target != 0)
            if (const auto n = solve_height_equation(x, target, phi.d, 1, out.equations))
                found.push_back(*n);
    }
    std::sort(found.begin(), found.end());
    out.exponents = std::move(found);
    return out;
}

} // namespace orbitobs
