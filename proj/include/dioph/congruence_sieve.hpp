#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pell.hpp"
#include "sequences.hpp"

namespace dioph {
namespace sieve {

/// Context for one index k of the d-family: the pair of moduli used by the
/// congruence arguments, plus the sequence data the fundamental solutions
/// are made of. d_k is odd for every k (asserted), which the parity
/// argument needs.
struct SieveContext {
    unsigned long k;
    mpz_class d, s, t;          // d_k, s_k, t_k
    mpz_class s_prev, t_prev;   // s_{k-1}, t_{k-1}
    mpz_class modSmall;         // -2 d_k  (> 0)
    mpz_class modLarge;         // 8 d_k^2

    static SieveContext make(unsigned long k) {
        if (k < 1) throw std::invalid_argument("SieveContext: k >= 1 required");
        SieveContext c;
        c.k = k;
        c.d = term(Family::d, k);
        c.s = term(Family::s, k);
        c.t = term(Family::t, k);
        c.s_prev = term(Family::s, k - 1);
        c.t_prev = term(Family::t, k - 1);
        if (c.d % 2 == 0) throw std::logic_error("SieveContext: d_k is expected odd");
        c.modSmall = -2 * c.d;
        c.modLarge = 8 * c.d * c.d;
        return c;
    }

    /// Fundamental z0 = z1 = 2(s_k s_{k-1} + 1), shared by both equations.
    mpz_class z_fund() const { return 2 * (s * s_prev + 1); }
};

/// A second-order homogeneous recurrence a_{n+2} = coef*a_{n+1} - a_n,
/// the shape every solution sequence here satisfies.
struct RecSeq {
    mpz_class a0, a1, coef;

    static RecSeq from_solution_seq(const pell::SolutionSeq& s) {
        return RecSeq{s.z_first(), s.z_second(), s.coef()};
    }
};

/// nu^(sign) for the x-equation of index k, with the descended fundamental
/// (z0, sign*s_{k-1}): a1 = (-2d-1) z0 - 4 s d (sign s_{k-1}).
inline RecSeq nu_seq(const SieveContext& c, int sign) {
    mpz_class z0 = c.z_fund();
    mpz_class x0 = sign >= 0 ? c.s_prev : -c.s_prev;
    return RecSeq{z0, (-2 * c.d - 1) * z0 - 4 * c.s * c.d * x0, -4 * c.d - 2};
}

/// omega^(sign) for the y-equation: a1 = (-6d-1) z1 - 4 t d (sign t_{k-1}).
inline RecSeq omega_seq(const SieveContext& c, int sign) {
    mpz_class z1 = c.z_fund();
    mpz_class y1 = sign >= 0 ? c.t_prev : -c.t_prev;
    return RecSeq{z1, (-6 * c.d - 1) * z1 - 4 * c.t * c.d * y1, -12 * c.d - 2};
}

/// Residues of the first `count` terms, by modular recurrence iteration.
/// Residues are canonical in [0, modulus); the sign of a modulus is
/// irrelevant to the congruence, so it is taken absolutely.
inline std::vector<mpz_class> residue_pattern(const RecSeq& seq, const mpz_class& modulus,
                                              unsigned long count) {
    mpz_class mod = abs(modulus);
    if (mod < 2) throw std::invalid_argument("residue_pattern: |modulus| >= 2 required");
    std::vector<mpz_class> out;
    out.reserve(count);
    auto norm = [&](mpz_class v) {
        mpz_class r = v % mod;
        if (r < 0) r += mod;
        return r;
    };
    if (count == 0) return out;
    mpz_class prev = norm(seq.a0);
    out.push_back(prev);
    if (count == 1) return out;
    mpz_class cur = norm(seq.a1), coef = norm(seq.coef);
    out.push_back(cur);
    for (unsigned long i = 2; i < count; ++i) {
        mpz_class next = norm(coef * cur - prev);
        prev = cur;
        cur = next;
        out.push_back(cur);
    }
    return out;
}

inline std::vector<mpz_class> residue_pattern(const pell::SolutionSeq& seq,
                                              const mpz_class& modulus, unsigned long count) {
    return residue_pattern(RecSeq::from_solution_seq(seq), modulus, count);
}

enum class Compatibility { equal, complementary, incompatible };

/// Classification of a fundamental pair (z0, z1): the intersection
/// nu_m = omega_n forces z0 = z1 or z0 + z1 = -2 d_k; anything else is
/// impossible for in-bound fundamentals.
inline Compatibility compatible_fundamentals(const SieveContext& c, const mpz_class& z0,
                                             const mpz_class& z1) {
    if (z0 == z1) return Compatibility::equal;
    if (z0 + z1 == c.modSmall) return Compatibility::complementary;
    return Compatibility::incompatible;
}

/// Index pairs of opposite parity never intersect: one side of the mod
/// 4|d_k| congruence is odd and the other even.
inline bool parity_filter(unsigned long m, unsigned long n) { return (m % 2) == (n % 2); }

/// Descent: if d_k | z0^2 - 1 and (z0^2-1)/d_k equals d_l for some l,
/// returns l. For in-bound fundamentals the argument forces l = k-1; that
/// is asserted by callers, not assumed here.
inline std::optional<unsigned long> descend_fundamental(const SieveContext& c,
                                                        const mpz_class& z0) {
    if (z0 < 1) throw std::invalid_argument("descend_fundamental: z0 >= 1 required");
    mpz_class num = z0 * z0 - 1;
    if (num % c.d != 0) return std::nullopt;
    mpz_class delta = num / c.d; // <= 0 since d_k < 0
    // d is strictly decreasing; walk it until past delta
    for (unsigned long l = 0;; ++l) {
        mpz_class dl = term(Family::d, l);
        if (dl == delta) return l;
        if (dl < delta) return std::nullopt;
    }
}

struct Elimination {
    bool eliminated = false;
    std::string step; // which exact contradiction fired, or why none did
};

/// The small-n elimination chain for the sign combination
/// (sx, sy) in {+1,-1}^2, run as exact integer arithmetic.
///
/// Assuming nu_m^{sx} = omega_n^{sy} with the descended fundamentals, the
/// mod 8 d_k^2 closed congruences force, with
///   A = m^2 + sx*m - 3 n^2 - 3 sy*n,   B = 2 (sx*m - sy*n):
///   (1) A^2 == B^2 (mod 4|d_k|)  -- violation eliminates outright;
///   (2) when both A^2, B^2 < 4|d_k| the congruence forces A = +-B;
///   (3) A = -B leads to |sx*m - sy*n| * (3 s_k - s_{k-1}) == 0 mod 2|d_k|,
///       contradicted exactly when that product lies in (0, 2|d_k|);
///   (4) A = +B leads to |A| * (s_k - s_{k-1}) == 0 mod |d_k|,
///       contradicted when the product lies in (0, |d_k|).
/// The decimal size estimates used in print become exact comparisons here.
/// A `survives` verdict would falsify the underlying proposition for
/// in-range (m, n) and is flagged loudly by every caller.
inline Elimination eliminate_small_n(const SieveContext& c, unsigned long m, unsigned long n,
                                     int sx, int sy) {
    if ((sx != 1 && sx != -1) || (sy != 1 && sy != -1))
        throw std::invalid_argument("eliminate_small_n: signs must be +-1");
    if (n < 2) throw std::invalid_argument("eliminate_small_n: n >= 2 required");
    if (!parity_filter(m, n))
        throw std::invalid_argument("eliminate_small_n: m and n must share parity");
    // n < (2/3) * (-d_k)^(1/4), exactly: 81 n^4 < 16 (-d_k)
    mpz_class n4 = mpz_class(n) * n * n * n;
    if (81 * n4 >= 16 * (-c.d))
        throw std::invalid_argument("eliminate_small_n: n outside the small-n window");

    mpz_class mm = m, nn = n;
    mpz_class A = mm * mm + sx * mm - 3 * nn * nn - 3 * sy * nn;
    mpz_class B = 2 * (sx * mm - sy * nn);
    mpz_class mod4 = 4 * (-c.d);
    if ((A * A - B * B) % mod4 != 0) return {true, "square-residue mismatch mod 4|d|"};
    if (A * A >= mod4 || B * B >= mod4)
        return {false, "size window exceeded; congruence alone cannot conclude"};
    // now A = B or A = -B exactly
    if (A == -B && A == B) {
        // A = B = 0 requires m = n <= 1, excluded by n >= 2
        throw std::logic_error("eliminate_small_n: degenerate A = B = 0");
    }
    if (A == -B) {
        mpz_class h = sx * mm - sy * nn; // B = 2h, h != 0 here
        mpz_class w = abs(h) * (3 * c.s - c.s_prev);
        if (w > 0 && w < 2 * (-c.d)) return {true, "(m-n)-type product in (0, 2|d|)"};
        return {false, "A = -B but the product escapes the window"};
    }
    if (A == B) {
        mpz_class w = abs(A) * (c.s - c.s_prev);
        if (w > 0 && w < (-c.d)) return {true, "symmetric product in (0, |d|)"};
        return {false, "A = B but the product escapes the window"};
    }
    throw std::logic_error("eliminate_small_n: A^2 = B^2 without A = +-B");
}

/// Largest n admitted by the small-n window for index k (81 n^4 < 16(-d)).
inline unsigned long small_n_limit(const SieveContext& c) {
    unsigned long n = 1;
    while (81 * mpz_class(n + 1) * (n + 1) * (n + 1) * (n + 1) < 16 * (-c.d)) ++n;
    return n;
}

} // namespace sieve
} // namespace dioph
