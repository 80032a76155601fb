#ifndef BCS_INTERVAL_HPP
#define BCS_INTERVAL_HPP

#include <cmath>
#include <algorithm>
#include <limits>
#include <string>

namespace bcs {

// Closed floating-point interval with outward rounding.
//
// Endpoints are doubles, possibly infinite. The empty interval is the
// distinguished value [+inf, -inf]. All operations are totalized: empty
// operands yield empty, domain violations (sqrt of a negative interval,
// ln of a nonpositive one) yield the empty result after intersecting with
// the natural domain.
//
// Rounding contract: every result contains the exact real-valued range of
// the operation over the operands, and each computed endpoint is within
// 2 ulps of the exact one. Exactly representable results (integer sums,
// exact products, perfect squares under sqrt) are returned unwidened.
struct Interval {
    double lo;
    double hi;

    constexpr Interval() : lo(0.0), hi(0.0) {}
    constexpr Interval(double point) : lo(point), hi(point) {}
    constexpr Interval(double l, double h) : lo(l), hi(h) {}

    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }

    static constexpr Interval empty() { return Interval(inf(), -inf()); }
    static constexpr Interval entire() { return Interval(-inf(), inf()); }

    bool is_empty() const { return !(lo <= hi); }
    bool is_entire() const { return lo == -inf() && hi == inf(); }
    bool is_degenerate() const { return lo == hi; }

    // Wid(empty) = 0 and Mid(empty) = 0 by convention.
    double width() const {
        if (is_empty()) return 0.0;
        double w = hi - lo;
        return std::isnan(w) ? inf() : w;
    }
    double mid() const {
        if (is_empty()) return 0.0;
        if (lo == -inf() && hi == inf()) return 0.0;
        if (lo == -inf()) return -std::numeric_limits<double>::max();
        if (hi == inf()) return std::numeric_limits<double>::max();
        double m = 0.5 * (lo + hi);
        if (!std::isfinite(m)) m = 0.5 * lo + 0.5 * hi;
        return std::clamp(m, lo, hi);
    }

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const {
        return other.is_empty() || (lo <= other.lo && other.hi <= hi);
    }
    bool interior_contains(double x) const { return lo < x && x < hi; }

    bool operator==(const Interval& rhs) const {
        if (is_empty() && rhs.is_empty()) return true;
        return lo == rhs.lo && hi == rhs.hi;
    }
};

namespace detail {

inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}
inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

// Endpoint sums with -inf + inf guarded to the pessimistic direction.
inline double add_down(double a, double b) {
    double s = a + b;
    if (std::isnan(s)) return -Interval::inf();
    if (s - a == b && s - b == a) return s;  // exact
    return next_down(s);
}
inline double add_up(double a, double b) {
    double s = a + b;
    if (std::isnan(s)) return Interval::inf();
    if (s - a == b && s - b == a) return s;
    return next_up(s);
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// 0 * inf is 0 for interval endpoint products.
inline double mul_down(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) return p > 0 ? std::numeric_limits<double>::max() : p;
    if (std::fma(a, b, -p) == 0.0) return p;
    return next_down(p);
}
inline double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) return p < 0 ? -std::numeric_limits<double>::max() : p;
    if (std::fma(a, b, -p) == 0.0) return p;
    return next_up(p);
}

inline double div_down(double a, double b) {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (std::isnan(q)) return -Interval::inf();  // inf/inf endpoint case
    if (!std::isfinite(q)) return q > 0 ? std::numeric_limits<double>::max() : q;
    if (std::isfinite(b) && std::fma(q, b, -a) == 0.0) return q;
    return next_down(q);
}
inline double div_up(double a, double b) {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (std::isnan(q)) return Interval::inf();
    if (!std::isfinite(q)) return q < 0 ? -std::numeric_limits<double>::max() : q;
    if (std::isfinite(b) && std::fma(q, b, -a) == 0.0) return q;
    return next_up(q);
}

}  // namespace detail

inline Interval hull(const Interval& a, const Interval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

inline Interval intersect(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    Interval r(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
    return r.is_empty() ? Interval::empty() : r;
}

// True iff the interval cannot be split into two non-degenerate parts:
// degenerate, or the bounds are adjacent floats.
inline bool is_canonical(const Interval& x) {
    if (x.is_empty()) return true;
    return x.lo == x.hi || detail::next_up(x.lo) == x.hi;
}

inline Interval operator+(const Interval& x, const Interval& y) {
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    return Interval(detail::add_down(x.lo, y.lo), detail::add_up(x.hi, y.hi));
}

inline Interval operator-(const Interval& x) {
    if (x.is_empty()) return Interval::empty();
    return Interval(-x.hi, -x.lo);
}

inline Interval operator-(const Interval& x, const Interval& y) {
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    return Interval(detail::sub_down(x.lo, y.hi), detail::sub_up(x.hi, y.lo));
}

inline Interval operator*(const Interval& x, const Interval& y) {
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    using namespace detail;
    double lo = std::min(std::min(mul_down(x.lo, y.lo), mul_down(x.lo, y.hi)),
                         std::min(mul_down(x.hi, y.lo), mul_down(x.hi, y.hi)));
    double hi = std::max(std::max(mul_up(x.lo, y.lo), mul_up(x.lo, y.hi)),
                         std::max(mul_up(x.hi, y.lo), mul_up(x.hi, y.hi)));
    return Interval(lo, hi);
}

// Extended division as (up to) two quotient rays. Used directly by backward
// propagation; operator/ returns their hull.
struct IntervalPair {
    Interval first;
    Interval second;  // empty when the quotient is a single interval
};

inline IntervalPair div_rays(const Interval& x, const Interval& y) {
    using namespace detail;
    if (x.is_empty() || y.is_empty()) return {Interval::empty(), Interval::empty()};
    if (!y.contains(0.0)) {
        double lo = std::min(std::min(div_down(x.lo, y.lo), div_down(x.lo, y.hi)),
                             std::min(div_down(x.hi, y.lo), div_down(x.hi, y.hi)));
        double hi = std::max(std::max(div_up(x.lo, y.lo), div_up(x.lo, y.hi)),
                             std::max(div_up(x.hi, y.lo), div_up(x.hi, y.hi)));
        return {Interval(lo, hi), Interval::empty()};
    }
    if (y.lo == 0.0 && y.hi == 0.0) {
        // No defined quotients at all.
        return {Interval::empty(), Interval::empty()};
    }
    if (x.contains(0.0)) return {Interval::entire(), Interval::empty()};
    // x strictly positive or strictly negative, 0 in the interior or at an
    // endpoint of y: the quotient is one or two rays.
    bool xpos = x.lo > 0.0;
    if (y.lo == 0.0) {
        return {xpos ? Interval(div_down(x.lo, y.hi), Interval::inf())
                     : Interval(-Interval::inf(), div_up(x.hi, y.hi)),
                Interval::empty()};
    }
    if (y.hi == 0.0) {
        return {xpos ? Interval(-Interval::inf(), div_up(x.lo, y.lo))
                     : Interval(div_down(x.hi, y.lo), Interval::inf()),
                Interval::empty()};
    }
    if (xpos) {
        return {Interval(-Interval::inf(), div_up(x.lo, y.lo)),
                Interval(div_down(x.lo, y.hi), Interval::inf())};
    }
    return {Interval(-Interval::inf(), div_up(x.hi, y.hi)),
            Interval(div_down(x.hi, y.lo), Interval::inf())};
}

inline Interval operator/(const Interval& x, const Interval& y) {
    IntervalPair q = div_rays(x, y);
    return hull(q.first, q.second);
}

inline Interval sqr(const Interval& x) {
    if (x.is_empty()) return Interval::empty();
    using namespace detail;
    double alo = std::abs(x.lo), ahi = std::abs(x.hi);
    double mlo = std::min(alo, ahi), mhi = std::max(alo, ahi);
    double hi = mul_up(mhi, mhi);
    double lo = x.contains(0.0) ? 0.0 : mul_down(mlo, mlo);
    return Interval(lo, hi);
}

inline Interval sqrt(const Interval& x) {
    Interval d = intersect(x, Interval(0.0, Interval::inf()));
    if (d.is_empty()) return Interval::empty();
    using namespace detail;
    double lo = std::sqrt(d.lo);
    if (std::fma(lo, lo, -d.lo) != 0.0) lo = next_down(lo);
    double hi = std::sqrt(d.hi);
    if (hi != Interval::inf() && std::fma(hi, hi, -d.hi) != 0.0) hi = next_up(hi);
    return Interval(std::max(lo, 0.0), hi);
}

inline Interval abs(const Interval& x) {
    if (x.is_empty()) return Interval::empty();
    if (x.lo >= 0.0) return x;
    if (x.hi <= 0.0) return -x;
    return Interval(0.0, std::max(-x.lo, x.hi));
}

// exp and ln rely on the libm functions being faithfully rounded; a one-ulp
// outward nudge then guarantees containment.
inline Interval exp(const Interval& x) {
    if (x.is_empty()) return Interval::empty();
    using namespace detail;
    auto e_down = [](double v) {
        if (v == -Interval::inf()) return 0.0;
        if (v == 0.0) return 1.0;
        return std::max(next_down(std::exp(v)), 0.0);
    };
    auto e_up = [](double v) {
        if (v == Interval::inf()) return Interval::inf();
        if (v == 0.0) return 1.0;
        return next_up(std::exp(v));
    };
    return Interval(e_down(x.lo), e_up(x.hi));
}

inline Interval ln(const Interval& x) {
    Interval d = intersect(x, Interval(0.0, Interval::inf()));
    if (d.is_empty()) return Interval::empty();
    using namespace detail;
    double lo = d.lo <= 0.0 ? -Interval::inf() : next_down(std::log(d.lo));
    double hi;
    if (d.hi == Interval::inf()) hi = Interval::inf();
    else if (d.hi == 1.0) hi = 0.0;
    else hi = next_up(std::log(d.hi));
    if (d.lo == 1.0) lo = 0.0;
    return Interval(lo, hi);
}

// Integer power, defined for any base. Exponents are small in practice, so
// repeated directed-rounding multiplies are fine.
inline Interval pow_i(const Interval& x, long n) {
    if (x.is_empty()) return Interval::empty();
    if (n == 0) return Interval(1.0, 1.0);
    if (n < 0) return Interval(1.0, 1.0) / pow_i(x, -n);
    if (n == 1) return x;
    if (n % 2 == 0) return sqr(pow_i(x, n / 2));
    // Odd power is monotone increasing over the whole real line. Note that
    // for v < 0 the repeated products alternate sign, so "round the final
    // result down" means alternating the rounding direction per step; we
    // sidestep that by rounding through |v| and restoring the sign.
    auto pw = [n](double v, bool up) {
        double a = std::abs(v);
        bool neg = v < 0.0;
        bool mag_up = up != neg;  // for negative v, a larger magnitude means a smaller value
        double r = a;
        for (long i = 1; i < n; ++i) r = mag_up ? detail::mul_up(r, a) : detail::mul_down(r, a);
        return neg ? -r : r;
    };
    return Interval(pw(x.lo, false), pw(x.hi, true));
}

// Real power, nonnegative bases only; negative parts of the base are clipped.
inline Interval pow_r(const Interval& x, double r) {
    if (x.is_empty()) return Interval::empty();
    if (r == std::floor(r) && std::abs(r) < 1e9 && r >= 0) return pow_i(x, (long)r);
    Interval d = intersect(x, Interval(0.0, Interval::inf()));
    if (d.is_empty()) return Interval::empty();
    using namespace detail;
    auto pow_pt = [](double b, double e, bool up) {
        if (b == 0.0) {
            if (e > 0) return 0.0;
            if (e < 0) return Interval::inf();
            return 1.0;
        }
        if (b == Interval::inf()) return e > 0 ? Interval::inf() : 0.0;
        double p = std::pow(b, e);
        return up ? next_up(p) : std::max(next_down(p), 0.0);
    };
    if (r >= 0) return Interval(pow_pt(d.lo, r, false), pow_pt(d.hi, r, true));
    return Interval(pow_pt(d.hi, r, false), pow_pt(d.lo, r, true));
}

inline Interval min2(const Interval& x, const Interval& y) {
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    return Interval(std::min(x.lo, y.lo), std::min(x.hi, y.hi));
}

inline Interval max2(const Interval& x, const Interval& y) {
    if (x.is_empty() || y.is_empty()) return Interval::empty();
    return Interval(std::max(x.lo, y.lo), std::max(x.hi, y.hi));
}

// Tight enclosure of pi.
inline Interval pi_enclosure() {
    double p = 3.14159265358979323846;
    return Interval(p, detail::next_up(p));
}

std::string to_string(const Interval& x);

}  // namespace bcs

#endif  // BCS_INTERVAL_HPP
