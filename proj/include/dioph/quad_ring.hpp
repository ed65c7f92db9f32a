#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dioph {

/// Element a + b*sqrt(D) of Z[sqrt(D)], exact arbitrary-precision integers.
/// D must be squarefree and not 0 or 1; elements with different D never mix.
struct QuadInt {
    mpz_class a;
    mpz_class b;
    long D;

    QuadInt(mpz_class a_, mpz_class b_, long D_) : a(std::move(a_)), b(std::move(b_)), D(D_) {
        if (D == 0 || D == 1) throw std::domain_error("QuadInt: D must not be 0 or 1");
    }

    /// a^2 - D*b^2, exact.
    mpz_class norm() const { return a * a - D * b * b; }

    bool operator==(const QuadInt& o) const { return D == o.D && a == o.a && b == o.b; }
};

inline QuadInt quad_mul(const QuadInt& x, const QuadInt& y) {
    if (x.D != y.D) throw std::invalid_argument("quad_mul: mismatched ring parameter D");
    return QuadInt(x.a * y.a + x.D * (x.b * y.b), x.a * y.b + x.b * y.a, x.D);
}

inline QuadInt quad_pow(QuadInt base, unsigned long e) {
    QuadInt acc(1, 0, base.D);
    while (e) {
        if (e & 1) acc = quad_mul(acc, base);
        base = quad_mul(base, base);
        e >>= 1;
    }
    return acc;
}

/// floor(sqrt(n)) for n >= 0, exact at any size.
inline mpz_class isqrt(const mpz_class& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Exact perfect-square test with the root as a byproduct.
inline bool perfect_square(const mpz_class& n, mpz_class& root) {
    if (n < 0) return false;
    root = isqrt(n);
    return root * root == n;
}

/// Witness that (u + v*sqrt(D))^2 equals a tested rational integer.
/// For D < 0 one of u, v is always 0: a rational integer is a square in
/// Z[sqrt(D)] iff it is u^2 or D*v^2, because (u+v*sqrt(D))^2 in Z forces
/// u*v = 0.
struct SquareWitness {
    mpz_class u;
    mpz_class v;
};

/// Decides whether the rational integer n is a square in Z[sqrt(D)], D < 0
/// squarefree. Returns the witness, or nullopt if n is not a square.
inline std::optional<SquareWitness> is_square_in_ring(const mpz_class& n, long D) {
    if (D >= 0) throw std::domain_error("is_square_in_ring: only D < 0 is supported");
    mpz_class root;
    if (n >= 0) {
        if (perfect_square(n, root)) return SquareWitness{root, 0};
        return std::nullopt;
    }
    // n < 0: need n = D * v^2
    mpz_class q = -n; // = |n|
    mpz_class absD = -mpz_class(D);
    if (q % absD != 0) return std::nullopt;
    if (perfect_square(q / absD, root)) return SquareWitness{0, root};
    return std::nullopt;
}

/// One pairwise check inside a tuple report: elements at positions i < j,
/// the product-plus-one value, and its witness if it is a square.
struct PairResult {
    std::size_t i = 0, j = 0;
    mpz_class value; // elements[i]*elements[j] + 1
    std::optional<SquareWitness> witness;
};

struct TupleReport {
    std::vector<mpz_class> elements;
    long ringD = -2;
    std::vector<PairResult> pairResults;
    bool valid = false;
    std::vector<std::string> problems;
};

/// Checks the Diophantine tuple property in Z[sqrt(D)]: all elements
/// nonzero and pairwise distinct, and every pairwise product plus one a
/// square in the ring. A zero product-plus-one counts as the square of 0.
inline TupleReport verify_tuple(const std::vector<mpz_class>& elements, long D) {
    if (elements.size() < 2) throw std::invalid_argument("verify_tuple: need at least 2 elements");
    TupleReport rep;
    rep.elements = elements;
    rep.ringD = D;
    rep.valid = true;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i] == 0) {
            rep.valid = false;
            rep.problems.push_back("element at index " + std::to_string(i) + " is zero");
        }
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            if (elements[i] == elements[j]) {
                rep.valid = false;
                rep.problems.push_back("elements at indices " + std::to_string(i) + " and " +
                                       std::to_string(j) + " are equal");
            }
        }
    }
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            PairResult pr;
            pr.i = i;
            pr.j = j;
            pr.value = elements[i] * elements[j] + 1;
            if (pr.value == 0)
                pr.witness = SquareWitness{0, 0};
            else
                pr.witness = is_square_in_ring(pr.value, D);
            if (!pr.witness) {
                rep.valid = false;
                rep.problems.push_back("product of indices " + std::to_string(i) + "," +
                                       std::to_string(j) + " plus 1 = " + pr.value.get_str() +
                                       " is not a square in the ring");
            }
            rep.pairResults.push_back(std::move(pr));
        }
    return rep;
}

} // namespace dioph
