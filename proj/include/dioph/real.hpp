#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace dioph {

/// Thrown when an enclosure refuses to decide a comparison even at the
/// precision cap. Callers treat this as "the two values are presumably
/// equal"; it never occurs for the generically irrational quantities that
/// arise here unless the inputs are engineered to coincide.
struct undecidable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// RAII wrapper for a single mpfr_t.
class Mpfr {
  public:
    explicit Mpfr(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_nan(v_); }
    Mpfr(const Mpfr& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(Mpfr o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

} // namespace detail

/// Two-sided enclosure [lo, hi] of a real number, all endpoint arithmetic
/// outward-rounded. Operations that leave the representable domain widen to
/// [-inf, +inf] instead of failing, so comparisons simply come back
/// undecided and the caller escalates precision.
class Interval {
  public:
    explicit Interval(mpfr_prec_t prec = 64) : prec_(prec), lo_(prec), hi_(prec) {}

    static Interval whole(mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_inf(r.lo(), -1);
        mpfr_set_inf(r.hi(), +1);
        return r;
    }
    static Interval from_long(long n, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_si(r.lo(), n, MPFR_RNDD);
        mpfr_set_si(r.hi(), n, MPFR_RNDU);
        return r;
    }
    static Interval from_int(const mpz_class& n, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo(), n.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi(), n.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_rat(const mpq_class& q, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    /// Base of the natural logarithm.
    static Interval euler(mpfr_prec_t prec) {
        Interval one = from_long(1, prec);
        Interval r(prec);
        mpfr_exp(r.lo(), one.lo(), MPFR_RNDD);
        mpfr_exp(r.hi(), one.hi(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return prec_; }
    mpfr_ptr lo() { return lo_.get(); }
    mpfr_ptr hi() { return hi_.get(); }
    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }

    bool valid() const {
        return !mpfr_nan_p(lo()) && !mpfr_nan_p(hi()) && mpfr_cmp(lo(), hi()) <= 0;
    }
    bool finite() const {
        return valid() && mpfr_number_p(lo()) && mpfr_number_p(hi());
    }
    /// Certified sign: -1, 0 (= straddles or touches zero), +1.
    int sign() const {
        if (!valid()) return 0;
        if (mpfr_sgn(lo()) > 0) return 1;
        if (mpfr_sgn(hi()) < 0) return -1;
        return 0;
    }
    bool contains_zero() const {
        return valid() && mpfr_sgn(lo()) <= 0 && mpfr_sgn(hi()) >= 0;
    }

    /// Certified strict order against another enclosure. 0 = undecided.
    int cmp(const Interval& o) const {
        if (!valid() || !o.valid()) return 0;
        if (mpfr_cmp(hi(), o.lo()) < 0) return -1;
        if (mpfr_cmp(lo(), o.hi()) > 0) return +1;
        return 0;
    }

    double width_approx() const {
        if (!finite()) return std::numeric_limits<double>::infinity();
        detail::Mpfr w(prec_);
        mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
        return mpfr_get_d(w.get(), MPFR_RNDU);
    }

    /// Midpoint at this precision (not an enclosure; display only).
    detail::Mpfr mid() const {
        detail::Mpfr m(prec_);
        mpfr_add(m.get(), lo(), hi(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }

  private:
    mpfr_prec_t prec_;
    detail::Mpfr lo_, hi_;
};

inline Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r.valid() ? r : Interval::whole(r.prec());
}

inline Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
    return r.valid() ? r : Interval::whole(r.prec());
}

inline Interval operator-(const Interval& a) {
    Interval r(a.prec());
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    return r;
}

inline Interval operator*(const Interval& a, const Interval& b) {
    mpfr_prec_t prec = std::max(a.prec(), b.prec());
    if (!a.finite() || !b.finite()) return Interval::whole(prec);
    Interval r(prec);
    detail::Mpfr t(prec);
    mpfr_srcptr as[2] = {a.lo(), a.hi()};
    mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    bool first = true;
    for (auto x : as)
        for (auto y : bs) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo()) < 0) mpfr_set(r.lo(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi()) > 0) mpfr_set(r.hi(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r.valid() ? r : Interval::whole(prec);
}

inline Interval operator/(const Interval& a, const Interval& b) {
    mpfr_prec_t prec = std::max(a.prec(), b.prec());
    if (!a.finite() || !b.finite() || b.contains_zero()) return Interval::whole(prec);
    Interval r(prec);
    detail::Mpfr t(prec);
    mpfr_srcptr as[2] = {a.lo(), a.hi()};
    mpfr_srcptr bs[2] = {b.lo(), b.hi()};
    bool first = true;
    for (auto x : as)
        for (auto y : bs) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo()) < 0) mpfr_set(r.lo(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi()) > 0) mpfr_set(r.hi(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r.valid() ? r : Interval::whole(prec);
}

inline Interval log(const Interval& a) {
    Interval r(a.prec());
    if (!a.valid() || mpfr_sgn(a.hi()) <= 0) return Interval::whole(a.prec());
    if (mpfr_sgn(a.lo()) <= 0) {
        mpfr_set_inf(r.lo(), -1);
    } else {
        mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
    }
    mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
    return r.valid() ? r : Interval::whole(a.prec());
}

inline Interval sqrt(const Interval& a) {
    Interval r(a.prec());
    if (!a.valid() || mpfr_sgn(a.hi()) < 0) return Interval::whole(a.prec());
    if (mpfr_sgn(a.lo()) < 0) {
        mpfr_set_zero(r.lo(), +1);
    } else {
        mpfr_sqrt(r.lo(), a.lo(), MPFR_RNDD);
    }
    mpfr_sqrt(r.hi(), a.hi(), MPFR_RNDU);
    return r.valid() ? r : Interval::whole(a.prec());
}

inline Interval abs(const Interval& a) {
    if (!a.valid()) return Interval::whole(a.prec());
    Interval r(a.prec());
    if (mpfr_sgn(a.lo()) >= 0) return a;
    if (mpfr_sgn(a.hi()) <= 0) return -a;
    mpfr_set_zero(r.lo(), +1);
    detail::Mpfr t(a.prec());
    mpfr_neg(t.get(), a.lo(), MPFR_RNDU);
    if (mpfr_cmp(t.get(), a.hi()) > 0)
        mpfr_set(r.hi(), t.get(), MPFR_RNDU);
    else
        mpfr_set(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

inline Interval max(const Interval& a, const Interval& b) {
    if (!a.valid() || !b.valid()) return Interval::whole(std::max(a.prec(), b.prec()));
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_max(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

/// a^e for e >= 0; requires a >= 0 when e is large (all uses are positive).
inline Interval pow_ui(const Interval& a, unsigned long e) {
    Interval r = Interval::from_long(1, a.prec());
    if (!a.finite()) return Interval::whole(a.prec());
    Interval base = a;
    if (base.sign() < 0 && e % 2 == 0) base = abs(base);
    r = Interval::from_long(1, a.prec());
    for (unsigned long i = 0; i < e; ++i) r = r * base;
    return r;
}

/// A certified real number: a recipe that can produce an enclosure at any
/// requested working precision. Arithmetic composes recipes, so escalating
/// precision re-evaluates the whole expression tree from exact inputs.
class Real {
  public:
    using Recipe = std::function<Interval(mpfr_prec_t)>;

    Real() : Real(0L) {}
    explicit Real(Recipe f) : f_(std::make_shared<Recipe>(std::move(f))) {}
    Real(long n) : Real(Recipe([n](mpfr_prec_t p) { return Interval::from_long(n, p); })) {}
    Real(const mpz_class& n)
        : Real(Recipe([n](mpfr_prec_t p) { return Interval::from_int(n, p); })) {}
    Real(const mpq_class& q)
        : Real(Recipe([q](mpfr_prec_t p) { return Interval::from_rat(q, p); })) {}

    /// sqrt(r) for a nonnegative integer radicand.
    static Real sqrt_int(const mpz_class& r) {
        if (r < 0) throw std::domain_error("sqrt_int: negative radicand");
        return Real(Recipe([r](mpfr_prec_t p) { return sqrt(Interval::from_int(r, p)); }));
    }
    /// p + q*sqrt(r) with exact rational p, q.
    static Real surd(const mpq_class& p, const mpq_class& q, const mpz_class& r) {
        return Real(p) + Real(q) * sqrt_int(r);
    }
    static Real euler() {
        return Real(Recipe([](mpfr_prec_t p) { return Interval::euler(p); }));
    }

    Interval eval(mpfr_prec_t prec) const { return (*f_)(prec); }

  private:
    std::shared_ptr<const Recipe> f_;

    friend Real operator+(const Real& a, const Real& b) {
        auto fa = a.f_, fb = b.f_;
        return Real(Recipe([fa, fb](mpfr_prec_t p) { return (*fa)(p) + (*fb)(p); }));
    }
    friend Real operator-(const Real& a, const Real& b) {
        auto fa = a.f_, fb = b.f_;
        return Real(Recipe([fa, fb](mpfr_prec_t p) { return (*fa)(p) - (*fb)(p); }));
    }
    friend Real operator-(const Real& a) {
        auto fa = a.f_;
        return Real(Recipe([fa](mpfr_prec_t p) { return -(*fa)(p); }));
    }
    friend Real operator*(const Real& a, const Real& b) {
        auto fa = a.f_, fb = b.f_;
        return Real(Recipe([fa, fb](mpfr_prec_t p) { return (*fa)(p) * (*fb)(p); }));
    }
    friend Real operator/(const Real& a, const Real& b) {
        auto fa = a.f_, fb = b.f_;
        return Real(Recipe([fa, fb](mpfr_prec_t p) { return (*fa)(p) / (*fb)(p); }));
    }
    friend Real log(const Real& a) {
        auto fa = a.f_;
        return Real(Recipe([fa](mpfr_prec_t p) { return log((*fa)(p)); }));
    }
    friend Real sqrt(const Real& a) {
        auto fa = a.f_;
        return Real(Recipe([fa](mpfr_prec_t p) { return sqrt((*fa)(p)); }));
    }
    friend Real abs(const Real& a) {
        auto fa = a.f_;
        return Real(Recipe([fa](mpfr_prec_t p) { return abs((*fa)(p)); }));
    }
    friend Real max(const Real& a, const Real& b) {
        auto fa = a.f_, fb = b.f_;
        return Real(Recipe([fa, fb](mpfr_prec_t p) { return max((*fa)(p), (*fb)(p)); }));
    }
    friend Real pow_ui(const Real& a, unsigned long e) {
        auto fa = a.f_;
        return Real(Recipe([fa, e](mpfr_prec_t p) { return pow_ui((*fa)(p), e); }));
    }
};

/// Default working-precision ladder.
constexpr mpfr_prec_t kDefaultPrec = 256;
constexpr mpfr_prec_t kPrecCap = 1 << 16;

/// Certified three-way comparison, escalating precision until the
/// enclosures separate. Throws undecidable_error at the cap.
inline int certified_cmp(const Real& a, const Real& b, mpfr_prec_t start = kDefaultPrec,
                         mpfr_prec_t cap = kPrecCap) {
    for (mpfr_prec_t p = start; p <= cap; p *= 2) {
        int c = a.eval(p).cmp(b.eval(p));
        if (c != 0) return c;
    }
    throw undecidable_error("certified_cmp: enclosures never separated");
}

inline bool certified_less(const Real& a, const Real& b, mpfr_prec_t start = kDefaultPrec,
                           mpfr_prec_t cap = kPrecCap) {
    return certified_cmp(a, b, start, cap) < 0;
}

/// Certified sign of a real, escalating as needed.
inline int certified_sign(const Real& a, mpfr_prec_t start = kDefaultPrec,
                          mpfr_prec_t cap = kPrecCap) {
    return certified_cmp(a, Real(0L), start, cap);
}

/// Floor of an enclosed real, certified (both endpoints share the floor).
/// Escalates precision until unambiguous.
inline mpz_class certified_floor(const Real& a, mpfr_prec_t start = kDefaultPrec,
                                 mpfr_prec_t cap = kPrecCap) {
    for (mpfr_prec_t p = start; p <= cap; p *= 2) {
        Interval iv = a.eval(p);
        if (!iv.finite()) continue;
        mpz_class flo, fhi;
        mpfr_get_z(flo.get_mpz_t(), iv.lo(), MPFR_RNDD);
        mpfr_get_z(fhi.get_mpz_t(), iv.hi(), MPFR_RNDD);
        if (flo == fhi) return flo;
    }
    throw undecidable_error("certified_floor: endpoint floors never agreed");
}

/// Decimal rendering with a certified digit count: emits the longest
/// rounding of the midpoint (up to maxDigits significant digits) on which
/// both enclosure endpoints agree. Deterministic at fixed precision.
struct DecimalString {
    std::string digits;
    int certified = 0;
};

inline DecimalString to_decimal(const Interval& iv, int maxDigits = 20) {
    DecimalString out;
    if (!iv.finite()) {
        out.digits = "unrepresentable";
        return out;
    }
    char buf1[128], buf2[128];
    for (int n = maxDigits; n >= 1; --n) {
        mpfr_snprintf(buf1, sizeof buf1, "%.*Re", n - 1, iv.lo());
        mpfr_snprintf(buf2, sizeof buf2, "%.*Re", n - 1, iv.hi());
        if (std::string(buf1) == std::string(buf2)) {
            out.digits = buf1;
            out.certified = n;
            return out;
        }
    }
    // endpoints do not even share one digit; report the order of magnitude
    mpfr_snprintf(buf1, sizeof buf1, "%.1Re", iv.mid().get());
    out.digits = std::string("~") + buf1;
    out.certified = 0;
    return out;
}

inline DecimalString to_decimal(const Real& x, mpfr_prec_t prec = kDefaultPrec,
                                int maxDigits = 20) {
    return to_decimal(x.eval(prec), maxDigits);
}

} // namespace dioph
