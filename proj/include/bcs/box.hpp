#ifndef BCS_BOX_HPP
#define BCS_BOX_HPP

#include <vector>
#include <cassert>

#include "bcs/interval.hpp"

namespace bcs {

// Cartesian product of intervals. A box is empty iff any component is empty.
struct Box {
    std::vector<Interval> comps;

    Box() = default;
    explicit Box(std::size_t n) : comps(n, Interval(0.0, 0.0)) {}
    Box(std::initializer_list<Interval> xs) : comps(xs) {}

    std::size_t size() const { return comps.size(); }
    Interval& operator[](std::size_t i) { return comps[i]; }
    const Interval& operator[](std::size_t i) const { return comps[i]; }

    bool is_empty() const {
        for (const auto& c : comps)
            if (c.is_empty()) return true;
        return false;
    }

    bool operator==(const Box& rhs) const {
        if (comps.size() != rhs.comps.size()) return false;
        if (is_empty() && rhs.is_empty()) return true;
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!(comps[i] == rhs.comps[i])) return false;
        return true;
    }

    std::vector<double> widths() const {
        std::vector<double> w(comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) w[i] = comps[i].width();
        return w;
    }

    // Product of widths; 0 for empty. Accumulated in long double to limit
    // drift when summing many volumes downstream.
    long double volume() const {
        if (is_empty()) return 0.0L;
        long double v = 1.0L;
        for (const auto& c : comps) v *= (long double)c.width();
        return v;
    }

    bool contains_point(const std::vector<double>& p) const {
        assert(p.size() == comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!comps[i].contains(p[i])) return false;
        return true;
    }

    bool contains(const Box& other) const {
        assert(other.size() == size());
        if (other.is_empty()) return true;
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!comps[i].contains(other.comps[i])) return false;
        return true;
    }
};

inline Box intersect(const Box& a, const Box& b) {
    assert(a.size() == b.size());
    Box r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = intersect(a[i], b[i]);
    return r;
}

inline Box hull(const Box& a, const Box& b) {
    assert(a.size() == b.size());
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    Box r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

inline bool eps_bounded(const Box& b, const std::vector<double>& eps) {
    assert(eps.size() == b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i].width() > eps[i]) return false;
    return true;
}

inline bool is_canonical(const Box& b) {
    for (const auto& c : b.comps)
        if (!is_canonical(c)) return false;
    return true;
}

}  // namespace bcs

#endif  // BCS_BOX_HPP
