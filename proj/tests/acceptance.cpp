#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <iostream>

#include "bcs/benchmarks.hpp"
#include "bcs/evr.hpp"
#include "bcs/parser.hpp"
#include "bcs/report.hpp"
#include "bcs/search.hpp"
#include "test_util.hpp"

using namespace bcs;
using bcs::test::Rng;
using bcs::test::ulp_distance;

namespace {

const std::vector<Algo> kAlgos = {Algo::dmbc_plus, Algo::uca5, Algo::uca6,
                                  Algo::uca6_plus};

double paving_eps(const NCSP& p) { return p.dim() >= 3 ? 0.1 : 0.05; }

SolveOptions opts_for(const NCSP& p, double eps) {
    SolveOptions o;
    o.eps = eps_vector(eps, p.dim());
    return o;
}

PavingResult run(const NCSP& p, Algo a, double eps,
                 std::optional<SplitPolicy> split = {}) {
    SolveOptions o = opts_for(p, eps);
    o.split = split;
    return solve(p, a, o);
}

bool satisfies_all(const NCSP& p, const std::vector<double>& pt, double slack_rel) {
    for (const auto& c : p.constraints) {
        double scale = 1.0;
        for (const auto& a : c.atoms) {
            double v = point_eval(c.expr, a.root, pt);
            if (!std::isnan(v) && !std::isinf(v))
                scale = std::max(scale, std::abs(v));
        }
        if (!c.point_satisfies(pt, slack_rel * scale)) return false;
    }
    return true;
}

bool in_union(const std::vector<Box>& boxes, const std::vector<double>& pt) {
    for (const auto& b : boxes)
        if (b.contains_point(pt)) return true;
    return false;
}

ConstraintRefs running_refs(const NCSP& p, const std::vector<int>& ids) {
    ConstraintRefs r;
    for (int id : ids) r.push_back(&p.constraints[(std::size_t)id]);
    return r;
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// Strictly feasible witness grid: dense uniform scan of the domain keeping
// points that satisfy every constraint with slack >= eps * scale.
std::vector<std::vector<double>> witness_grid(const NCSP& p, double eps,
                                              std::size_t target) {
    std::vector<std::vector<double>> out;
    std::size_t d = p.dim();
    int n = d == 2 ? 140 : 32;  // ~2e4 candidates, keeps ~1e3 witnesses
    std::vector<int> idx(d, 0);
    bool done = false;
    while (!done) {
        std::vector<double> pt(d);
        for (std::size_t i = 0; i < d; ++i)
            pt[i] = p.domain[i].lo +
                    (idx[i] + 0.5) * p.domain[i].width() / n;
        bool ok = true;
        for (const auto& c : p.constraints) {
            double scale = 1.0;
            for (const auto& a : c.atoms) {
                double v = point_eval(c.expr, a.root, pt);
                if (!std::isnan(v) && !std::isinf(v))
                    scale = std::max(scale, std::abs(v));
            }
            // strict feasibility margin
            Constraint tight = c;
            if (!c.point_satisfies(pt, -eps * scale)) { ok = false; break; }
            (void)tight;
        }
        if (ok) out.push_back(pt);
        std::size_t k = 0;
        for (; k < d; ++k) {
            if (++idx[k] < n) break;
            idx[k] = 0;
        }
        done = (k == d);
    }
    if (out.size() > target) {
        // thin deterministically to about `target` points
        std::vector<std::vector<double>> thin;
        double step = (double)out.size() / (double)target;
        for (double x = 0; (std::size_t)x < out.size(); x += step)
            thin.push_back(out[(std::size_t)x]);
        out = thin;
    }
    return out;
}

}  // namespace

TEST_CASE("criterion_1 interval soundness fuzz") {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(100);
    long violations = 0, slack_bad = 0;
    for (int t = 0; t < 1000000; ++t) {
        int op = rng.uniform_int(0, 3);
        Interval x = rng.interval();
        Interval y = rng.interval();
        double a = rng.point_in(x), b = rng.point_in(y);
        Interval r;
        double v;
        switch (op) {
            case 0: r = x + y; v = a + b; break;
            case 1: r = x - y; v = a - b; break;
            case 2: r = x * y; v = a * b; break;
            default:
                if (b == 0.0) continue;
                r = x / y; v = a / b; break;
        }
        if (std::isnan(v)) continue;
        if (std::isinf(v)) {
            if (!(r.lo == -Interval::inf() || r.hi == Interval::inf()) &&
                !r.contains(v))
                ++violations;
            continue;
        }
        if (!r.contains(v)) ++violations;
        // endpoint slack vs extended precision on degenerate operands
        if (op != 3 || y.lo != 0.0) {
            long double exlo, exhi;
            long double c[4];
            switch (op) {
                case 0: c[0] = (long double)x.lo + y.lo; c[1] = (long double)x.lo + y.hi;
                        c[2] = (long double)x.hi + y.lo; c[3] = (long double)x.hi + y.hi; break;
                case 1: c[0] = (long double)x.lo - y.lo; c[1] = (long double)x.lo - y.hi;
                        c[2] = (long double)x.hi - y.lo; c[3] = (long double)x.hi - y.hi; break;
                case 2: c[0] = (long double)x.lo * y.lo; c[1] = (long double)x.lo * y.hi;
                        c[2] = (long double)x.hi * y.lo; c[3] = (long double)x.hi * y.hi; break;
                default:
                    if (y.contains(0.0)) { c[0] = c[1] = c[2] = c[3] = 0; break; }
                    c[0] = (long double)x.lo / y.lo; c[1] = (long double)x.lo / y.hi;
                    c[2] = (long double)x.hi / y.lo; c[3] = (long double)x.hi / y.hi; break;
            }
            if (op != 3 || !y.contains(0.0)) {
                exlo = std::min(std::min(c[0], c[1]), std::min(c[2], c[3]));
                exhi = std::max(std::max(c[0], c[1]), std::max(c[2], c[3]));
                if ((long double)r.lo > exlo || (long double)r.hi < exhi)
                    ++slack_bad;
                else if (ulp_distance(r.lo, (double)exlo) > 2 ||
                         ulp_distance(r.hi, (double)exhi) > 2)
                    ++slack_bad;
            }
        }
    }
    CHECK(violations == 0);
    CHECK(slack_bad == 0);
    CHECK(elapsed(t0) < 30.0);
}

TEST_CASE("criterion_2 contractor contract") {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(101);
    long wrong = 0, non_contractive = 0, comp_bad = 0;
    for (const auto& name : benchmark_names()) {
        NCSP p = benchmark(name);
        ConstraintRefs all;
        for (const auto& c : p.constraints) all.push_back(&c);
        for (int t = 0; t < 1200; ++t) {
            Box b(p.dim());
            for (std::size_t i = 0; i < p.dim(); ++i) {
                double u = rng.point_in(p.domain[i]);
                double v = rng.point_in(p.domain[i]);
                if (u > v) std::swap(u, v);
                b[i] = Interval(u, v);
            }
            std::vector<double> pt = rng.point_in(b);
            const Constraint& c = p.constraints[(std::size_t)rng.uniform_int(
                0, (int)p.constraints.size() - 1)];

            Box r = revise(c, b);
            if (!r.is_empty() && !b.contains(r)) ++non_contractive;
            if (c.point_satisfies(pt) && (r.is_empty() || !r.contains_point(pt)))
                ++wrong;

            Box d = DR(b, all);
            if (!d.is_empty() && !b.contains(d)) ++non_contractive;
            if (satisfies_all(p, pt, 0.0) &&
                (d.is_empty() || !d.contains_point(pt)))
                ++wrong;

            Box cb = CB1(b, c);
            if (!cb.is_empty() && !b.contains(cb)) ++non_contractive;
            if (cb.is_empty() || !cb.contains_point(pt)) {
                double v = point_eval(c.expr, c.atoms[0].root, pt);
                double scale = std::isnan(v) ? 1.0 : std::max(1.0, std::abs(v));
                if (!c.point_satisfies(pt, 1e-9 * scale)) ++comp_bad;
            }
        }
    }
    CHECK(wrong == 0);
    CHECK(non_contractive == 0);
    CHECK(comp_bad == 0);
    CHECK(elapsed(t0) < 120.0);
}

TEST_CASE("criterion_3 paving soundness") {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(102);
    long unsat = 0, active_boundary = 0;
    for (const auto& name : benchmark_names()) {
        NCSP p = benchmark(name);
        double eps = paving_eps(p);
        for (Algo a : kAlgos) {
            PavingResult r = run(p, a, eps);
            for (const auto& b : r.inner) {
                std::vector<double> pt = rng.point_in(b);
                if (!satisfies_all(p, pt, 1e-9)) ++unsat;
            }
            // precision contract shared with criterion 5
            std::vector<double> ev = eps_vector(eps, p.dim());
            for (const auto& bb : r.boundary) {
                std::vector<char> act =
                    active_variables(bb.box, running_refs(p, bb.running), ev);
                if (any_active(act)) ++active_boundary;
            }
        }
    }
    CHECK(unsat == 0);
    CHECK(active_boundary == 0);
    CHECK(elapsed(t0) < 600.0);
}

TEST_CASE("criterion_4 paving completeness on witness grids") {
    for (const auto& name : benchmark_names()) {
        NCSP p = benchmark(name);
        double eps = p.dim() >= 3 ? 0.25 : 0.2;
        auto witnesses = witness_grid(p, eps, 1000);
        for (Algo a : kAlgos) {
            PavingResult r = run(p, a, eps);
            std::vector<Box> cover = r.inner;
            for (const auto& bb : r.boundary) cover.push_back(bb.box);
            long missed = 0;
            for (const auto& w : witnesses)
                if (!in_union(cover, w)) ++missed;
            CHECK_MESSAGE(missed == 0,
                          name << "/" << algo_name(a) << " missed " << missed
                               << " of " << witnesses.size());
        }
    }
}

TEST_CASE("criterion_5 boundary boxes have no active variable") {
    // the same contract is asserted on every criterion-3 run; this pass
    // re-checks it independently at coarser resolution for all benchmarks
    for (const auto& name : benchmark_names()) {
        NCSP p = benchmark(name);
        double eps = 0.5;
        std::vector<double> ev = eps_vector(eps, p.dim());
        for (Algo a : kAlgos) {
            PavingResult r = run(p, a, eps);
            long bad = 0;
            for (const auto& bb : r.boundary) {
                std::vector<char> act =
                    active_variables(bb.box, running_refs(p, bb.running), ev);
                if (any_active(act)) ++bad;
            }
            CHECK_MESSAGE(bad == 0, name << "/" << algo_name(a));
        }
    }
}

TEST_CASE("criterion_6 analytic area of the half annulus") {
    auto t0 = std::chrono::steady_clock::now();
    const double exact = 1050.0 * 3.14159265358979323846;
    NCSP p = benchmark("S08");
    PavingResult r = run(p, Algo::uca6_plus, 0.5);
    double inner = (double)r.stats.inner_volume;
    double outer = (double)r.stats.outer_volume;
    CHECK(inner <= exact);
    CHECK(outer >= exact);
    CHECK(inner >= exact * 0.95);
    CHECK(outer <= exact * 1.05);
    CHECK(elapsed(t0) < 60.0);
}

TEST_CASE("criterion_7 relative efficiency on P1 to P4") {
    for (const auto& name : {"P1", "P2", "P3", "P4"}) {
        NCSP p = benchmark(name);
        PavingResult fast = run(p, Algo::uca6_plus, 0.1, SplitPolicy::bs_ds);
        PavingResult base = run(p, Algo::dmbc_plus, 0.1, SplitPolicy::ds);
        long long nf = fast.stats.inner_count + fast.stats.boundary_count;
        long long nb = base.stats.inner_count + base.stats.boundary_count;
        CHECK_MESSAGE(nf * 5 <= nb, name << ": " << nf << " vs " << nb);
    }
}

TEST_CASE("criterion_8 volume ratio trend") {
    auto check = [](const char* name, double floor) {
        NCSP p = benchmark(name);
        for (Algo a : {Algo::uca5, Algo::uca6, Algo::uca6_plus}) {
            PavingResult r = run(p, a, 0.1, SplitPolicy::bs_ds);
            CHECK_MESSAGE(r.stats.ratio >= floor,
                          name << "/" << algo_name(a) << " ratio "
                               << r.stats.ratio);
        }
    };
    check("P1", 0.90);
    check("P2", 0.90);
    check("P4", 0.90);
    check("FD", 0.90);
    check("G12", 0.80);
    check("H12", 0.80);
}

TEST_CASE("criterion_9 dmbc_plus and uca6 union equivalence") {
    for (const auto& name :
         {"S06", "S08", "WP", "G12", "H12", "F22", "L01", "LE1"}) {
        NCSP p = benchmark(name);
        double eps = p.dim() >= 3 ? 0.25 : 0.2;
        PavingResult a = run(p, Algo::dmbc_plus, eps, SplitPolicy::ds);
        PavingResult b = run(p, Algo::uca6, eps, SplitPolicy::ds);
        double ia = (double)a.stats.inner_volume;
        double ib = (double)b.stats.inner_volume;
        double oa = (double)a.stats.outer_volume;
        double ob = (double)b.stats.outer_volume;
        CHECK_MESSAGE(std::abs(ia - ib) <= 1e-6 * std::max({1.0, ia, ib}),
                      name << " inner " << ia << " vs " << ib);
        CHECK_MESSAGE(std::abs(oa - ob) <= 1e-6 * std::max({1.0, oa, ob}),
                      name << " outer " << oa << " vs " << ob);
    }
}

TEST_CASE("criterion_10 extreme vertex representation suite") {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(110);
    long bad = 0;
    for (int t = 0; t < 1000; ++t) {
        int d = rng.uniform_int(1, 3);
        int n = rng.uniform_int(1, d == 3 ? 4 : 6);
        std::vector<int> dims(d);
        for (int i = 0; i < d; ++i) dims[i] = i;
        std::vector<Box> cells;
        std::vector<int> idx(d, 0);
        double pb = rng.uniform(0.2, 0.8);
        bool done = false;
        while (!done) {
            if (rng.chance(pb)) {
                Box b(d);
                for (int i = 0; i < d; ++i) b[i] = Interval(idx[i], idx[i] + 1);
                cells.push_back(b);
            }
            int k = 0;
            for (; k < d; ++k) {
                if (++idx[k] < n) break;
                idx[k] = 0;
            }
            done = (k == d);
        }
        if (cells.empty()) continue;
        ExtremeVertexSet evr = dbr_to_evr(cells, dims);
        std::vector<Box> back = evr_to_dbr(evr);
        auto member = [&](const std::vector<Box>& bs, const std::vector<double>& q) {
            for (const auto& b : bs) {
                bool in = true;
                for (int i = 0; i < d; ++i)
                    if (!(b[i].lo <= q[i] && q[i] <= b[i].hi)) { in = false; break; }
                if (in) return true;
            }
            return false;
        };
        auto vcs = evr.vertex_coords();
        // XOR-cone identity and round-trip on all cell centers
        std::fill(idx.begin(), idx.end(), 0);
        done = false;
        while (!done) {
            std::vector<double> q(d);
            for (int i = 0; i < d; ++i) q[i] = idx[i] + 0.5;
            int cones = 0;
            for (const auto& v : vcs) {
                bool le = true;
                for (int i = 0; i < d; ++i)
                    if (!(v[i] <= q[i])) { le = false; break; }
                if (le) ++cones;
            }
            bool black = member(cells, q);
            if ((cones % 2 == 1) != black) ++bad;
            if (member(back, q) != black) ++bad;
            int k = 0;
            for (; k < d; ++k) {
                if (++idx[k] < n) break;
                idx[k] = 0;
            }
            done = (k == d);
        }
        // canonicity: the vertex set is identical when rebuilt from the
        // compacted cover
        auto v2 = dbr_to_evr(back, dims).vertex_coords();
        std::sort(vcs.begin(), vcs.end());
        std::sort(v2.begin(), v2.end());
        if (vcs != v2) ++bad;
        // 1-D merge equivalence
        if (d == 1) {
            std::vector<std::pair<double, double>> merged;
            for (const auto& c : cells) {
                if (!merged.empty() && c[0].lo <= merged.back().second)
                    merged.back().second = std::max(merged.back().second, c[0].hi);
                else
                    merged.emplace_back(c[0].lo, c[0].hi);
            }
            if (back.size() != merged.size()) ++bad;
            else
                for (std::size_t i = 0; i < merged.size(); ++i)
                    if (back[i][0].lo != merged[i].first ||
                        back[i][0].hi != merged[i].second)
                        ++bad;
        }
    }
    CHECK(bad == 0);
    CHECK(elapsed(t0) < 30.0);
}

TEST_CASE("criterion_11 determinism and traversal independence") {
    for (const auto& name : {"S08", "WP", "G12", "P1"}) {
        NCSP p = benchmark(name);
        double eps = p.dim() >= 3 ? 0.25 : 0.1;
        SolveOptions o = opts_for(p, eps);
        PavingResult d1 = solve(p, Algo::uca6_plus, o);
        PavingResult d2 = solve(p, Algo::uca6_plus, o);
        std::string f1 = boxes_to_text(d1, p, o.eps);
        std::string f2 = boxes_to_text(d2, p, o.eps);
        CHECK(f1 == f2);  // bit-identical box files
        o.order = Order::bfs;
        PavingResult b = solve(p, Algo::uca6_plus, o);
        double iv = (double)d1.stats.inner_volume;
        double ov = (double)d1.stats.outer_volume;
        CHECK(std::abs(iv - (double)b.stats.inner_volume) <=
              1e-9 * std::max(1.0, iv));
        CHECK(std::abs(ov - (double)b.stats.outer_volume) <=
              1e-9 * std::max(1.0, ov));
    }
}

TEST_CASE("criterion_12 desk scale runtime") {
    for (const auto& name : benchmark_names()) {
        NCSP p = benchmark(name);
        double eps = p.dim() >= 3 ? 0.1 : 0.01;
        for (Algo a : kAlgos) {
            auto t0 = std::chrono::steady_clock::now();
            PavingResult r = run(p, a, eps);
            double secs = elapsed(t0);
            CHECK_MESSAGE(secs < 300.0,
                          name << "/" << algo_name(a) << " took " << secs
                               << "s (" << r.stats.inner_count << "+"
                               << r.stats.boundary_count << " boxes)");
        }
    }
}
