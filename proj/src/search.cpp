#include "bcs/search.hpp"

#include "bcs/evr.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace bcs {

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::dmbc: return "dmbc";
        case Algo::dmbc_plus: return "dmbc_plus";
        case Algo::uca5: return "uca5";
        case Algo::uca6: return "uca6";
        case Algo::uca6_plus: return "uca6_plus";
    }
    return "?";
}

std::optional<Algo> algo_from_name(const std::string& s) {
    if (s == "dmbc") return Algo::dmbc;
    if (s == "dmbc_plus" || s == "dmbcplus" || s == "dmbc+") return Algo::dmbc_plus;
    if (s == "uca5") return Algo::uca5;
    if (s == "uca6") return Algo::uca6;
    if (s == "uca6_plus" || s == "uca6plus" || s == "uca6+") return Algo::uca6_plus;
    return std::nullopt;
}

std::vector<double> eps_vector(double eps, std::size_t dim) {
    return std::vector<double>(dim, eps);
}

namespace {

using Mask = std::uint64_t;

struct Node {
    Box box;
    Mask running;
    // Memoized complementary boxes, indexed by constraint id; valid iff the
    // corresponding bit of memo_mask is set.
    std::vector<Box> memo;
    Mask memo_mask = 0;
};

class Solver {
public:
    Solver(const NCSP& p, Algo algo, const SolveOptions& opts)
        : p_(p), algo_(algo), opts_(opts) {
        if (opts_.eps.size() != p.dim())
            throw std::invalid_argument("eps dimension mismatch");
        for (double e : opts_.eps)
            if (!(e > 0)) throw std::invalid_argument("eps must be positive");
        if (!(opts_.frag_ratio > 0 && opts_.frag_ratio < 1))
            throw std::invalid_argument("frag_ratio must be in (0,1)");
        if (opts_.d_stop < 1) throw std::invalid_argument("d_stop must be >= 1");
        split_ = opts_.split.value_or(
            (algo == Algo::dmbc || algo == Algo::dmbc_plus) ? SplitPolicy::ds
                                                            : SplitPolicy::bs_ds);
        memo_ = opts_.memo.value_or(algo == Algo::uca6);
        for (const auto& c : p.constraints) relaxed_.push_back(relax_negation(c));
    }

    PavingResult run() {
        auto t0 = std::chrono::steady_clock::now();
        Node root;
        root.box = p_.domain;
        root.running = p_.constraints.empty()
                           ? 0
                           : (p_.constraints.size() >= 64
                                  ? ~Mask(0)
                                  : ((Mask(1) << p_.constraints.size()) - 1));
        if (memo_) root.memo.resize(p_.constraints.size());
        put(std::move(root));
        while (!list_.empty()) {
            Node n = get_next();
            ++res_.stats.nodes_expanded;
            switch (algo_) {
                case Algo::dmbc: step_dmbc(n, false); break;
                case Algo::dmbc_plus: step_dmbc(n, true); break;
                case Algo::uca5: step_uca5(n); break;
                case Algo::uca6: step_uca6(n); break;
                case Algo::uca6_plus: step_uca6_plus(n); break;
            }
        }
        finish_stats(t0);
        return std::move(res_);
    }

private:
    // ---- waiting list ----
    void put(Node n) { list_.push_back(std::move(n)); }
    Node get_next() {
        Node n;
        if (opts_.order == Order::dfs) {
            n = std::move(list_.back());
            list_.pop_back();
        } else {
            n = std::move(list_.front());
            list_.pop_front();
        }
        return n;
    }

    // ---- shared helpers ----
    ConstraintRefs refs(Mask running) const {
        ConstraintRefs r;
        for (std::size_t i = 0; i < p_.constraints.size(); ++i)
            if (running >> i & 1) r.push_back(&p_.constraints[i]);
        return r;
    }

    Box do_DR(const Box& b, const ConstraintRefs& cs, const ContractorConfig& cfg) {
        ++res_.stats.dr_calls;
        return DR(b, cs, cfg);
    }

    Box do_CB1(const Box& b, int cid, const ContractorConfig& cfg) {
        ++res_.stats.cb_calls;
        return CB_relaxed(b, relaxed_[(std::size_t)cid], cfg);
    }

    void emit_inner(Box b) {
        if (b.is_empty()) return;
        res_.inner.push_back(std::move(b));
    }

    void emit_boundary(Box b, Mask running) {
        if (b.is_empty()) return;
        BoundaryBox bb;
        bb.box = std::move(b);
        for (std::size_t i = 0; i < p_.constraints.size(); ++i)
            if (running >> i & 1) bb.running.push_back((int)i);
        res_.boundary.push_back(std::move(bb));
    }

    // FC classification of a terminal box.
    void check_epsilon(const Box& b, Mask running, const ContractorConfig& cfg = {}) {
        ConstraintRefs cs = refs(running);
        ++res_.stats.dr_calls;
        if (DR(b, cs, cfg).is_empty()) return;  // infeasible: discard
        ++res_.stats.cb_calls;
        if (CB(b, cs, cfg).is_empty()) {
            emit_inner(b);
            return;
        }
        emit_boundary(b, running);
    }

    bool whole_set_feasible(const Box& b, Mask running) {
        for (std::size_t i = 0; i < p_.constraints.size(); ++i) {
            if (!(running >> i & 1)) continue;
            if (!do_CB1(b, (int)i, opts_.contractor).is_empty()) return false;
        }
        return true;
    }

    void push_ds(const Box& b, Mask running, const std::vector<char>& active,
                 const Node* parent_memo) {
        ++res_.stats.ds_splits;
        auto halves = DS(b, active);
        for (Box* h : {&halves.first, &halves.second}) {
            Node child;
            child.box = std::move(*h);
            child.running = running;
            if (parent_memo && memo_) {
                child.memo = parent_memo->memo;
                child.memo_mask = parent_memo->memo_mask & running;
            } else if (memo_) {
                child.memo.resize(p_.constraints.size());
            }
            put(std::move(child));
        }
    }

    // ---- DMBC / DMBC+ ----
    void step_dmbc(Node& n, bool plus) {
        ConstraintRefs cs = refs(n.running);
        if (cs.empty()) {
            emit_inner(n.box);
            return;
        }
        Box b = do_DR(n.box, cs, opts_.contractor);
        if (b.is_empty()) return;
        if (plus && whole_set_feasible(b, n.running)) {
            emit_inner(std::move(b));
            return;
        }
        std::vector<char> active = active_variables(b, cs, opts_.eps);
        if (!any_active(active)) {
            check_epsilon(b, n.running, opts_.contractor);
            return;
        }
        push_ds(b, n.running, active, nullptr);
    }

    // ---- UCA5 ----
    void step_uca5(Node& n) {
        ConstraintRefs cs = refs(n.running);
        if (cs.empty()) {
            emit_inner(n.box);
            return;
        }
        Box b = do_DR(n.box, cs, opts_.contractor);
        if (b.is_empty()) return;
        std::vector<char> active = active_variables(b, cs, opts_.eps);
        if (!any_active(active)) {
            check_epsilon(b, n.running, opts_.contractor);
            return;
        }
        // Scan running inequalities in id order: empty CB removes the
        // constraint; the first strictly-reducing CB becomes the pivot.
        Mask running = n.running;
        int pivot = -1;
        Box pivot_cb;
        for (std::size_t i = 0; i < p_.constraints.size(); ++i) {
            if (!(running >> i & 1)) continue;
            if (p_.constraints[i].is_equality()) continue;
            Box cb = do_CB1(b, (int)i, opts_.contractor);
            if (cb.is_empty()) {
                running &= ~(Mask(1) << i);
                continue;
            }
            if (!(cb == b)) {
                pivot = (int)i;
                pivot_cb = std::move(cb);
                break;
            }
        }
        if (running == 0) {
            emit_inner(std::move(b));
            return;
        }
        split_node(b, running, active, pivot, pivot_cb, nullptr);
    }

    // ---- UCA6 ----
    void step_uca6(Node& n) {
        ConstraintRefs cs = refs(n.running);
        if (cs.empty()) {
            emit_inner(n.box);
            return;
        }
        Box b = do_DR(n.box, cs, opts_.contractor);
        if (b.is_empty()) return;
        std::vector<char> active = active_variables(b, cs, opts_.eps);
        if (!any_active(active)) {
            check_epsilon(b, n.running, opts_.contractor);
            return;
        }
        Mask running = n.running;
        Node next = choose_pivot_all(b, running, n, opts_.contractor, nullptr);
        if (next.running == 0) {
            emit_inner(std::move(b));
            return;
        }
        split_node(b, next.running, active, pivot_id_, pivot_cb_, &next);
    }

    // ---- UCA6+ ----
    void step_uca6_plus(Node& n) {
        ConstraintRefs cs = refs(n.running);
        if (cs.empty()) {
            emit_inner(n.box);
            return;
        }
        std::vector<char> active0 = active_variables(n.box, cs, opts_.eps);
        ContractorConfig rd = opts_.contractor;
        rd.active_mask = &active0;
        Box b = any_active(active0) ? do_DR(n.box, cs, rd)
                                    : do_DR(n.box, cs, opts_.contractor);
        if (b.is_empty()) return;
        std::vector<char> active = active_variables(b, cs, opts_.eps);
        int nactive = 0;
        for (char a : active) nactive += a;
        if (nactive <= opts_.d_stop) {
            dim_stop(b, n.running, active);
            return;
        }
        ContractorConfig rd2 = opts_.contractor;
        rd2.active_mask = &active;
        Node next = choose_pivot_all(b, n.running, n, rd2, &active);
        if (next.running == 0) {
            emit_inner(std::move(b));
            return;
        }
        split_node(b, next.running, active, pivot_id_, pivot_cb_, &next);
    }

    // Computes CB for every running inequality (seeded by the memo when
    // enabled), removes satisfied constraints, picks the minimum-volume
    // complementary box as pivot, and returns the updated running set and
    // memo. Results are left in pivot_id_ / pivot_cb_.
    Node choose_pivot_all(const Box& b, Mask running, const Node& n,
                          const ContractorConfig& cfg,
                          const std::vector<char>* uca6p_active) {
        Node next;
        next.running = running;
        if (memo_) {
            next.memo = n.memo;
            next.memo.resize(p_.constraints.size());
            next.memo_mask = n.memo_mask;
        }
        pivot_id_ = -1;
        long double best_vol = 0.0L;
        int fresh_budget = opts_.cb_first_k;  // 0 = unlimited (all)
        int used = 0;
        for (std::size_t i = 0; i < p_.constraints.size(); ++i) {
            if (!(next.running >> i & 1)) continue;
            if (p_.constraints[i].is_equality()) continue;
            Box seed = b;
            if (memo_ && (next.memo_mask >> i & 1)) {
                const Box& m = next.memo[i];
                if (uca6p_active && m.contains(b)) {
                    // UCA6+: a complementary box containing the whole node box
                    // carries no information; drop it.
                    next.memo_mask &= ~(Mask(1) << i);
                } else {
                    seed = intersect(b, m);
                }
            }
            bool fresh = fresh_budget == 0 || used < fresh_budget;
            Box cb;
            if (fresh) {
                ++used;
                cb = do_CB1(seed, (int)i, cfg);
            } else if (memo_ && (next.memo_mask >> i & 1)) {
                cb = intersect(b, next.memo[i]);
            } else {
                continue;  // no information for this constraint
            }
            if (cb.is_empty()) {
                next.running &= ~(Mask(1) << i);
                next.memo_mask &= ~(Mask(1) << i);
                continue;
            }
            if (memo_) {
                next.memo[i] = cb;
                next.memo_mask |= Mask(1) << i;
            }
            long double v = cb.volume();
            if (pivot_id_ < 0 || v < best_vol) {
                pivot_id_ = (int)i;
                best_vol = v;
                pivot_cb_ = cb;
            }
        }
        return next;
    }

    // BS around the pivot when requested and possible, otherwise DS.
    void split_node(const Box& b, Mask running, const std::vector<char>& active,
                    int pivot, const Box& pivot_cb, const Node* memo_src) {
        if (split_ == SplitPolicy::bs_ds && pivot >= 0 && !pivot_cb.is_empty() &&
            !(pivot_cb == b)) {
            auto outcome = BS(b, pivot_cb, opts_.frag_ratio, active);
            if (outcome) {
                ++res_.stats.bs_splits;
                Mask slab_running = running & ~(Mask(1) << pivot);
                for (std::size_t k = 0; k < outcome->parts.size(); ++k) {
                    Box& part = outcome->parts[k];
                    Mask r = k == 0 ? running : slab_running;
                    if (r == 0) {
                        emit_inner(std::move(part));
                        continue;
                    }
                    Node child;
                    child.box = std::move(part);
                    child.running = r;
                    if (memo_ && memo_src) {
                        child.memo = memo_src->memo;
                        child.memo_mask = memo_src->memo_mask & r;
                    } else if (memo_) {
                        child.memo.resize(p_.constraints.size());
                    }
                    put(std::move(child));
                }
                return;
            }
        }
        push_ds(b, running, active, memo_src);
    }

    // ---- DimStopSolver ----
    void dim_stop(const Box& b, Mask running, const std::vector<char>& active) {
        ConstraintRefs cs = refs(running);
        if (cs.empty()) {
            emit_inner(b);
            return;
        }
        std::vector<int> dims;
        for (std::size_t i = 0; i < active.size(); ++i)
            if (active[i]) dims.push_back((int)i);
        // Uniform grid of epsilon-bounded cells over the active dimensions.
        std::vector<std::vector<double>> ticks(dims.size());
        for (std::size_t k = 0; k < dims.size(); ++k) {
            std::size_t d = (std::size_t)dims[k];
            double lo = b[d].lo, hi = b[d].hi, w = hi - lo;
            long ncells = (long)std::ceil(w / opts_.eps[d]);
            if (ncells < 1) ncells = 1;
            for (;;) {
                ticks[k].clear();
                double maxw = 0.0;
                ticks[k].push_back(lo);
                for (long i = 1; i < ncells; ++i)
                    ticks[k].push_back(lo + w * (double)i / (double)ncells);
                ticks[k].push_back(hi);
                for (std::size_t i = 0; i + 1 < ticks[k].size(); ++i)
                    maxw = std::max(maxw, ticks[k][i + 1] - ticks[k][i]);
                if (maxw <= opts_.eps[d] || ncells > (long)1e7) break;
                ++ncells;  // floating-point rounding pushed a cell over epsilon
            }
        }
        std::vector<Box> inner_cells;
        std::vector<Box> boundary_cells;
        std::vector<std::size_t> idx(dims.size(), 0);
        for (;;) {
            Box cell = b;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                cell[(std::size_t)dims[k]] =
                    Interval(ticks[k][idx[k]], ticks[k][idx[k] + 1]);
            }
            ++res_.stats.dr_calls;
            ++res_.stats.cb_calls;
            switch (FC(cell, cs, opts_.contractor)) {
                case Feasibility::feasible: inner_cells.push_back(std::move(cell)); break;
                case Feasibility::infeasible: break;
                case Feasibility::unknown: boundary_cells.push_back(std::move(cell)); break;
            }
            std::size_t k = dims.size();
            bool done = true;
            while (k > 0) {
                --k;
                if (++idx[k] + 1 < ticks[k].size()) { done = false; break; }
                idx[k] = 0;
            }
            if (done || dims.empty()) break;
        }
        for (Box& ib : combine(inner_cells, dims)) emit_inner(std::move(ib));
        if (opts_.combine_boundary) {
            for (Box& bb : combine(boundary_cells, dims))
                emit_boundary(std::move(bb), running);
        } else {
            for (Box& bb : boundary_cells) emit_boundary(std::move(bb), running);
        }
    }

    void finish_stats(std::chrono::steady_clock::time_point t0) {
        SolveStats& s = res_.stats;
        s.inner_count = (long long)res_.inner.size();
        s.boundary_count = (long long)res_.boundary.size();
        for (const Box& b : res_.inner) s.inner_volume += b.volume();
        for (const BoundaryBox& b : res_.boundary)
            s.boundary_volume += b.box.volume();
        s.outer_volume = s.inner_volume + s.boundary_volume;
        s.ratio = s.outer_volume > 0 ? (double)(s.inner_volume / s.outer_volume)
                                     : -1.0;
        s.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
    }

    const NCSP& p_;
    Algo algo_;
    SolveOptions opts_;
    SplitPolicy split_;
    bool memo_;
    std::vector<Constraint> relaxed_;
    std::deque<Node> list_;
    PavingResult res_;
    int pivot_id_ = -1;
    Box pivot_cb_;
};

}  // namespace

PavingResult solve(const NCSP& p, Algo algo, const SolveOptions& opts) {
    return Solver(p, algo, opts).run();
}

}  // namespace bcs
