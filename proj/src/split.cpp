#include "bcs/split.hpp"

#include <algorithm>
#include <cassert>

namespace bcs {

std::vector<char> active_variables(const Box& b, const ConstraintRefs& cs,
                                   const std::vector<double>& eps) {
    std::uint64_t occurs = 0;
    for (const Constraint* c : cs) occurs |= c->vars();
    std::vector<char> m(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!(occurs >> i & 1)) continue;
        if (b[i].width() <= eps[i]) continue;
        if (is_canonical(b[i])) continue;
        m[i] = 1;
    }
    return m;
}

std::pair<Box, Box> DS(const Box& b, const std::vector<char>& active) {
    int best = -1;
    double bw = -1.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!active[i]) continue;
        double w = b[i].width();
        if (w > bw) { bw = w; best = (int)i; }
    }
    assert(best >= 0 && "DS requires an active variable");
    double m = b[(std::size_t)best].mid();
    Box lo = b, hi = b;
    lo[(std::size_t)best].hi = m;
    hi[(std::size_t)best].lo = m;
    return {lo, hi};
}

std::optional<SplitOutcome> BS(const Box& b, const Box& cb, double frag_ratio,
                               const std::vector<char>& active) {
    assert(!cb.is_empty() && b.contains(cb));
    struct Cut {
        double width;
        int dim;
        bool lower;  // slab on the lower side of cb
    };
    std::vector<Cut> cuts;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!active[i]) continue;
        double dw = b[i].width();
        double wlo = cb[i].lo - b[i].lo;
        double whi = b[i].hi - cb[i].hi;
        if (wlo >= frag_ratio * dw && wlo > 0) cuts.push_back({wlo, (int)i, true});
        if (whi >= frag_ratio * dw && whi > 0) cuts.push_back({whi, (int)i, false});
    }
    if (cuts.empty()) return std::nullopt;
    std::stable_sort(cuts.begin(), cuts.end(),
                     [](const Cut& a, const Cut& b) { return a.width > b.width; });
    SplitOutcome out;
    out.splitter = Splitter::BS;
    Box core = b;
    std::vector<Box> slabs;
    for (const Cut& c : cuts) {
        std::size_t d = (std::size_t)c.dim;
        Box slab = core;
        if (c.lower) {
            slab[d] = Interval(core[d].lo, cb[d].lo);
            core[d] = Interval(cb[d].lo, core[d].hi);
        } else {
            slab[d] = Interval(cb[d].hi, core[d].hi);
            core[d] = Interval(core[d].lo, cb[d].hi);
        }
        slabs.push_back(std::move(slab));
    }
    out.parts.push_back(std::move(core));
    for (auto& s : slabs) out.parts.push_back(std::move(s));
    return out;
}

}  // namespace bcs
