#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "quad_ring.hpp"

namespace dioph {
namespace pell {

/// z^2 - D*x^2 = N with D a positive nonsquare and N nonzero.
struct PellProblem {
    mpz_class D;
    mpz_class N;

    PellProblem(mpz_class D_, mpz_class N_) : D(std::move(D_)), N(std::move(N_)) {
        if (D <= 0) throw std::domain_error("PellProblem: D must be positive");
        mpz_class r;
        if (perfect_square(D, r)) throw std::domain_error("PellProblem: D must not be a square");
        if (N == 0) throw std::domain_error("PellProblem: N must be nonzero");
    }
};

/// Minimal (u, v) with u^2 - D v^2 = 1, u, v > 0.
struct PellUnit {
    mpz_class u;
    mpz_class v;
};

/// Fundamental solution of the u^2 - D v^2 = 1 equation via the periodic
/// continued fraction of sqrt(D), exact integer arithmetic throughout. The
/// convergent that first satisfies the equation is the minimal one (odd
/// periods pass through the -1 solution and reach +1 one period later).
inline PellUnit fundamental_unit(const mpz_class& D) {
    if (D <= 0) throw std::domain_error("fundamental_unit: D must be positive");
    mpz_class a0;
    if (perfect_square(D, a0)) throw std::domain_error("fundamental_unit: D is a perfect square");
    a0 = isqrt(D);
    mpz_class m = 0, d = 1, a = a0;
    mpz_class h0 = 1, h1 = a0, k0 = 0, k1 = 1;
    while (h1 * h1 - D * k1 * k1 != 1) {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    return PellUnit{h1, k1};
}

/// A fundamental solution class: z0 >= 1 (z0 >= 0 for N < 0), with the sign
/// of x0 carrying the class identity. Every positive solution arises as
/// (z0 + x0*sqrt(D)) * unit^m for exactly one class and one m >= 0.
struct PellClass {
    mpz_class z0;
    mpz_class x0;
    PellProblem problem;
};

namespace detail {
// (z0, -x0) and (z0, +x0) describe the same class iff multiplying the
// conjugate representative by the unit lands exactly on (z0, +x0).
inline bool ambiguous_pair(const mpz_class& z0, const mpz_class& x0, const mpz_class& D,
                           const PellUnit& u) {
    return z0 * u.u - D * u.v * x0 == z0 && z0 * u.v - u.u * x0 == x0;
}
} // namespace detail

/// Exhaustive class enumeration by scanning x0 over the Nagell range
/// derived from the fundamental unit:
///   N > 0:  2*D*x0^2 <= N*(u-1), z0 >= 1
///   N < 0:  2*D*x0^2 <= -N*(u+1), z0 >= 0, x0 >= 1
/// Ambiguous pairs (same positive-solution orbit) are emitted once with
/// canonical positive sign; x0 = 0 classes are emitted once.
inline std::vector<PellClass> fundamental_classes(const PellProblem& p) {
    PellUnit unit = fundamental_unit(p.D);
    std::vector<PellClass> out;
    const bool pos = p.N > 0;
    mpz_class limit = pos ? p.N * (unit.u - 1) : (-p.N) * (unit.u + 1);
    for (mpz_class x0 = pos ? 0 : 1; 2 * p.D * x0 * x0 <= limit; ++x0) {
        mpz_class z2 = p.N + p.D * x0 * x0;
        mpz_class z0;
        if (z2 < 0 || !perfect_square(z2, z0)) continue;
        if (pos && z0 < 1) continue;
        if (x0 == 0 || z0 == 0 || detail::ambiguous_pair(z0, x0, p.D, unit)) {
            out.push_back(PellClass{z0, x0, p});
        } else {
            out.push_back(PellClass{z0, x0, p});
            out.push_back(PellClass{z0, -x0, p});
        }
    }
    std::sort(out.begin(), out.end(), [](const PellClass& a, const PellClass& b) {
        if (a.z0 != b.z0) return a.z0 < b.z0;
        return a.x0 < b.x0;
    });
    return out;
}

/// The solution sequence of one class: z_m (and the paired coordinate x_m)
/// of (z0 + x0*sqrt(D)) * unit^m, satisfying the second-order recurrence
/// w_{m+2} = 2u * w_{m+1} - w_m in both coordinates.
struct SolutionSeq {
    PellClass cls;
    PellUnit unit;

    SolutionSeq(PellClass c, PellUnit u) : cls(std::move(c)), unit(std::move(u)) {}
    explicit SolutionSeq(PellClass c) : cls(std::move(c)), unit(fundamental_unit(cls.problem.D)) {}

    mpz_class z_first() const { return cls.z0; }
    mpz_class z_second() const {
        return unit.u * cls.z0 + cls.problem.D * unit.v * cls.x0;
    }
    mpz_class x_first() const { return cls.x0; }
    mpz_class x_second() const { return unit.v * cls.z0 + unit.u * cls.x0; }
    mpz_class coef() const { return 2 * unit.u; }
};

/// z-coordinate of the m-th solution in the class, exact. The generated
/// z-values must be strictly increasing (they are for every instance used
/// here, where N > 0 and z0 >= 1); a violation is an invariant breach.
inline mpz_class seq_term(const SolutionSeq& s, unsigned long m) {
    mpz_class prev = s.z_first();
    if (m == 0) return prev;
    mpz_class cur = s.z_second(), coef = s.coef();
    if (cur <= prev) throw std::logic_error("seq_term: z-sequence not strictly increasing");
    for (unsigned long i = 2; i <= m; ++i) {
        mpz_class next = coef * cur - prev;
        if (next <= cur) throw std::logic_error("seq_term: z-sequence not strictly increasing");
        prev = cur;
        cur = next;
    }
    return cur;
}

/// x-coordinate companion of seq_term (used when intersecting coordinate
/// sequences). Strict growth is enforced from the second step on; the
/// first step may rise from a negative x0.
inline mpz_class seq_coord(const SolutionSeq& s, unsigned long m) {
    mpz_class prev = s.x_first();
    if (m == 0) return prev;
    mpz_class cur = s.x_second(), coef = s.coef();
    if (cur <= prev) throw std::logic_error("seq_coord: coordinate sequence not increasing");
    for (unsigned long i = 2; i <= m; ++i) {
        mpz_class next = coef * cur - prev;
        if (next <= cur) throw std::logic_error("seq_coord: coordinate sequence not increasing");
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Brute-force oracle: every solution (z, x) with z in [1, zMax], x >= 0,
/// found by scanning x and testing squares. Sorted by z.
inline std::vector<std::pair<mpz_class, mpz_class>> solve_below(const PellProblem& p,
                                                                const mpz_class& zMax) {
    if (zMax < 1) throw std::invalid_argument("solve_below: zMax >= 1 required");
    std::vector<std::pair<mpz_class, mpz_class>> out;
    mpz_class zMax2 = zMax * zMax;
    // z^2 = N + D*x^2 is strictly increasing in x, so the scan terminates
    // at the first x past the window.
    for (mpz_class x = 0;; ++x) {
        mpz_class z2 = p.N + p.D * x * x;
        if (z2 > zMax2) break;
        if (z2 < 1) continue;
        mpz_class z;
        if (perfect_square(z2, z)) out.emplace_back(z, x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace pell
} // namespace dioph
