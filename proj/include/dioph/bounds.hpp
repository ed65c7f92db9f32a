#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <utility>

#include "real.hpp"
#include "sequences.hpp"

namespace dioph {
namespace bounds {

/// Exact gamma of the simultaneous-approximation theorem for three
/// integers a0 < a1 < a2 with one of them zero.
inline mpq_class bennett_gamma(long a0, long a1, long a2) {
    if (!(a0 < a1 && a1 < a2)) throw std::domain_error("bennett_gamma: need a0 < a1 < a2");
    if (a0 != 0 && a1 != 0 && a2 != 0)
        throw std::domain_error("bennett_gamma: one of a0, a1, a2 must be zero");
    mpq_class g;
    if (a2 - a1 >= a1 - a0) {
        g = mpq_class(mpz_class(a2 - a0) * (a2 - a0) * (a2 - a1) * (a2 - a1),
                      mpz_class(2) * a2 - a0 - a1);
    } else {
        g = mpq_class(mpz_class(a2 - a0) * (a2 - a0) * (a1 - a0) * (a1 - a0),
                      mpz_class(a1) + a2 - 2 * a0);
    }
    g.canonicalize();
    return g;
}

/// The data the approximation theorem runs on: (a0, a1, a2, N) plus the
/// derived gamma. Requires N > M^9 with M = max |ai|.
struct BennettContext {
    long a0, a1, a2;
    mpz_class N;
    mpz_class M;
    mpq_class gamma;

    static BennettContext make(long a0, long a1, long a2, mpz_class N) {
        BennettContext c{a0, a1, a2, std::move(N), 0, bennett_gamma(a0, a1, a2)};
        c.M = std::max({std::abs(a0), std::abs(a1), std::abs(a2)});
        if (c.N <= 0) throw std::domain_error("BennettContext: N must be positive");
        mpz_class M9 = 1;
        for (int i = 0; i < 9; ++i) M9 *= c.M;
        if (c.N <= M9) throw std::domain_error("BennettContext: N > M^9 required");
        return c;
    }

    /// prod_{i<j} (a_i - a_j)^2, exact.
    mpz_class pair_product_sq() const {
        mpz_class p = mpz_class(a0 - a1) * (a0 - a2) * (a1 - a2);
        return p * p;
    }
};

struct LambdaResult {
    Real lambda;
    bool lessThanTwo;   // decided exactly, see below
    bool applicable;    // denominator argument > 1
};

/// lambda = 1 + log(33 N gamma) / log(1.7 N^2 / prod). The comparison
/// lambda < 2 reduces to the exact rational test 33 N gamma < 1.7 N^2/prod,
/// so no enclosure is needed to decide it.
inline LambdaResult bennett_lambda(const BennettContext& c) {
    mpq_class num = 33 * mpq_class(c.N) * c.gamma;
    mpq_class den = mpq_class(17, 10) * mpq_class(c.N) * mpq_class(c.N) / c.pair_product_sq();
    num.canonicalize();
    den.canonicalize();
    LambdaResult r{Real(0L), false, den > 1};
    if (!r.applicable) return r;
    r.lambda = Real(1L) + log(Real(num)) / log(Real(den));
    r.lessThanTwo = num < den;
    return r;
}

/// Certified upper bounds (as exact rationals) for the two approximation
/// gaps |theta_i - p_i/q| of a positive solution (x, y, z) of the index-k
/// pair of equations z^2 + 2 d x^2 = 1 - d and 3 z^2 + 2 d y^2 = 3 - d.
/// Asserts the bound max(gap1, gap2) < (1 - d_k) / z^2.
inline std::pair<mpq_class, mpq_class> approx_gap(unsigned long k, const mpz_class& z,
                                                  const mpz_class& x, const mpz_class& y,
                                                  mpfr_prec_t prec = kDefaultPrec) {
    mpz_class d = term(Family::d, k);
    mpz_class s = term(Family::s, k);
    mpz_class t = term(Family::t, k);
    if (z < 1 || x < 0 || y < 0) throw std::domain_error("approx_gap: need positive solution");
    if (z * z + 2 * d * x * x != 1 - d || 3 * z * z + 2 * d * y * y != 3 - d)
        throw std::domain_error("approx_gap: (x, y, z) does not solve the index-k system");

    Real theta1 = Real(2 * s) / Real::sqrt_int(-2 * d);
    Real theta2 = Real(2 * t) / Real::sqrt_int(-6 * d);
    Real gap1 = abs(theta1 - Real(mpq_class(2 * s * x, z)));
    Real gap2 = abs(theta2 - Real(mpq_class(2 * t * y, 3 * z)));

    auto upper = [&](const Real& g) {
        for (mpfr_prec_t p = prec; p <= kPrecCap; p *= 2) {
            Interval iv = g.eval(p);
            if (!iv.finite()) continue;
            mpq_class ub;
            mpfr_get_q(ub.get_mpq_t(), iv.hi());
            return ub;
        }
        throw undecidable_error("approx_gap: no finite enclosure");
    };
    mpq_class u1 = upper(gap1), u2 = upper(gap2);
    mpq_class limit = mpq_class(1 - d) / (mpq_class(z) * z);
    limit.canonicalize();
    if (!(u1 < limit && u2 < limit))
        throw std::logic_error("approx_gap: certified gap bound exceeded the lemma bound");
    return {u1, u2};
}

/// log(-6d-1 + 2 t sqrt(-6d)) / log(-2d-1 + 2 s sqrt(-2d)) at index k:
/// the growth-rate ratio that caps m/(n+1).
inline Real index_ratio_bound(unsigned long k) {
    if (k < 1) throw std::invalid_argument("index_ratio_bound: k >= 1 required");
    mpz_class d = term(Family::d, k);
    mpz_class s = term(Family::s, k);
    mpz_class t = term(Family::t, k);
    Real up = Real(-6 * d - 1) + Real(2 * t) * Real::sqrt_int(-6 * d);
    Real dn = Real(-2 * d - 1) + Real(2 * s) * Real::sqrt_int(-2 * d);
    return log(up) / log(dn);
}

/// Everything the final inequality chain yields: the quartic-root
/// threshold, the bound on -d_k, and the implied largest index. None of
/// the published constants appear here; they are reproduced, and tests
/// compare against them.
struct ChainResult {
    unsigned long kProbe = 0;
    bool applicable = false;   // N = -3 d_k > 3^9 and lambda < 2
    Real lambda;
    bool lambdaBelowTwo = false;
    mpq_class coefficient;     // z^{2-lambda} bound coefficient (units of d_k^2)
    Real quarticRootBound;     // Theta with (-d_k)^(1/4) < Theta for all k >= kProbe
    mpz_class dkBound;         // floor(Theta^4)
    unsigned long kMax = 0;    // largest k with -d_k <= dkBound
    bool rhsDecreasing = false;
};

namespace detail {

// Right side of the chain inequality at T = -d_k, with the floored
// decimal constants it is evaluated with (their soundness is checked
// exactly in chain() before use):
//   RHS(T) = log(C T^2) log((17/40) T^2) / (0.5 log((59/100000) T) log(4T-3))
inline Real chain_rhs(const mpz_class& T) {
    mpq_class Cpaper(2527203, 100);  // >= 25272 (1 + 1/T), checked by caller
    mpq_class q1740(17, 40);
    mpq_class qfloor(59, 100000);    // <= 85/142560, checked by caller
    Real T2 = Real(mpz_class(T * T));
    Real num = log(Real(Cpaper) * T2) * log(Real(q1740) * T2);
    Real den = Real(mpq_class(1, 2)) * log(Real(qfloor) * Real(T)) * log(Real(4 * T - 3));
    return num / den;
}

} // namespace detail

/// Runs the full inequality chain anchored at index kProbe (>= 6): the
/// approximation-theorem lambda, the z^{2-lambda} coefficient, and the
/// combined growth inequality (-d_k)^{1/4} < RHS(-d_k). RHS decreases in
/// k (certified on the next two indices), so RHS at kProbe bounds every
/// k >= kProbe, giving -d_k <= dkBound and hence kMax.
inline ChainResult chain(unsigned long kProbe, mpfr_prec_t prec = kDefaultPrec) {
    if (kProbe < 6) throw std::domain_error("chain: kProbe >= 6 required");
    ChainResult r;
    r.kProbe = kProbe;
    mpz_class d = term(Family::d, kProbe);
    mpz_class T = -d;
    mpz_class N = 3 * T;

    // regime: N > 3^9 so the approximation theorem applies with M = 3
    mpz_class M9 = 1;
    for (int i = 0; i < 9; ++i) M9 *= 3;
    if (N <= M9) return r; // structurally inapplicable

    BennettContext bc = BennettContext::make(-3, -1, 0, N);
    if (bc.gamma != mpq_class(36, 5)) throw std::logic_error("chain: gamma != 36/5");
    LambdaResult lr = bennett_lambda(bc);
    r.lambda = lr.lambda;
    r.lambdaBelowTwo = lr.lessThanTwo;
    if (!lr.applicable || !lr.lessThanTwo) return r;

    // z^{2-lambda} < (1-d)(-3d) * 130 * (36/5) * 3^lambda with 3^lambda < 9
    // collapses to coefficient * d^2 with coefficient = 25272 (1 - 1/d).
    r.coefficient = 25272 * (mpq_class(1) - mpq_class(1, 1) / mpq_class(d));
    r.coefficient.canonicalize();
    // soundness of the floored constants used in chain_rhs, exactly:
    if (!(r.coefficient < mpq_class(2527203, 100)))
        throw std::logic_error("chain: printed coefficient constant is not an upper bound here");
    if (!(mpq_class(59, 100000) <= mpq_class(85, 142560)))
        throw std::logic_error("chain: floored log constant is not a lower bound");
    // the floored log argument must stay > 1 for the direction to be sound
    if (!(mpq_class(59, 100000) * mpq_class(T) > 1))
        throw std::logic_error("chain: log argument not > 1 at this index");

    r.quarticRootBound = detail::chain_rhs(T);
    r.dkBound = certified_floor(pow_ui(r.quarticRootBound, 4), prec);

    // RHS decreases in k: certify on the two following indices.
    mpz_class T1 = -term(Family::d, kProbe + 1);
    mpz_class T2 = -term(Family::d, kProbe + 2);
    r.rhsDecreasing = certified_less(detail::chain_rhs(T1), r.quarticRootBound, prec) &&
                      certified_less(detail::chain_rhs(T2), detail::chain_rhs(T1), prec);
    if (!r.rhsDecreasing) throw std::logic_error("chain: RHS failed the decrease check");

    unsigned long k = 0;
    while (-term(Family::d, k + 1) <= r.dkBound) ++k;
    r.kMax = k;
    r.applicable = true;
    return r;
}

} // namespace bounds
} // namespace dioph
