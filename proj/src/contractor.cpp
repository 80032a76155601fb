#include "bcs/contractor.hpp"

#include <cassert>
#include <cmath>

namespace bcs {

namespace {

// Safety inflation for inverse power maps whose exponent 1/r is not exactly
// representable: the relative error of pow(y, fl(1/r)) vs the true root is
// bounded by |ln y| * ulp(1/r) ~ 7e-14 for doubles, so a 1e-12 relative
// widening keeps the backward step an over-approximation.
Interval inflate(const Interval& x) {
    if (x.is_empty()) return x;
    double pad_lo = std::abs(x.lo) * 1e-12 + 1e-300;
    double pad_hi = std::abs(x.hi) * 1e-12 + 1e-300;
    return Interval(detail::next_down(x.lo - pad_lo),
                    detail::next_up(x.hi + pad_hi));
}

// Values x with x * b possibly in y (relational inverse of multiplication).
Interval inv_mul(const Interval& y, const Interval& b, const Interval& x) {
    if (b.lo == 0.0 && b.hi == 0.0)
        return y.contains(0.0) ? x : Interval::empty();
    IntervalPair q = div_rays(y, b);
    return hull(intersect(x, q.first), intersect(x, q.second));
}

// Values b with a / b possibly in y (relational inverse of division in the
// denominator).
Interval inv_div_den(const Interval& a, const Interval& y, const Interval& b) {
    if (y.contains(0.0) && a.contains(0.0)) return b;  // b unconstrained
    IntervalPair q = div_rays(a, y);
    return hull(intersect(b, q.first), intersect(b, q.second));
}

// Nonnegative real root y^(1/r) with soundness inflation.
Interval root_r(const Interval& y, double r) {
    Interval d = intersect(y, Interval(0.0, Interval::inf()));
    if (d.is_empty()) return Interval::empty();
    return inflate(pow_r(d, 1.0 / r));
}

// Odd integer root over the whole line.
Interval root_odd(const Interval& y, long n) {
    if (y.is_empty()) return y;
    Interval pos = root_r(intersect(y, Interval(0.0, Interval::inf())), (double)n);
    Interval neg = -root_r(intersect(-y, Interval(0.0, Interval::inf())), (double)n);
    return hull(pos, neg);
}

// Even-root pattern: x with |map(x)| matching root s, respecting x's sign.
Interval signed_from_magnitude(const Interval& x, const Interval& s) {
    if (s.is_empty()) return Interval::empty();
    if (x.lo >= 0.0) return intersect(x, s);
    if (x.hi <= 0.0) return intersect(x, -s);
    return intersect(x, hull(s, -s));
}

class Revisor {
public:
    Revisor(const Constraint& c, ContractorWorkspace& ws) : c_(c), ws_(ws) {}

    Box run(const Box& b) {
        if (c_.always_true) return b;
        if (c_.atoms.size() == 1)
            return revise_atom(c_.atoms[0], b);
        if (c_.conjunctive) {
            Box cur = b;
            for (const auto& a : c_.atoms) {
                cur = revise_atom(a, cur);
                if (cur.is_empty()) return cur;
            }
            return cur;
        }
        // Disjunction: hull of per-disjunct revisions.
        Box acc(b.size());
        bool first = true;
        for (const auto& a : c_.atoms) {
            Box r = revise_atom(a, b);
            if (r.is_empty()) continue;
            acc = first ? r : hull(acc, r);
            first = false;
        }
        if (first)
            for (auto& comp : acc.comps) comp = Interval::empty();
        return acc;
    }

private:
    static Interval admissible(Rel r) {
        switch (r) {
            case Rel::le: case Rel::lt: return Interval(-Interval::inf(), 0.0);
            case Rel::ge: case Rel::gt: return Interval(0.0, Interval::inf());
            case Rel::eq: return Interval(0.0, 0.0);
            case Rel::ne: return Interval::entire();
        }
        return Interval::entire();
    }

    Box revise_atom(const ConstraintAtom& atom, const Box& b) {
        const Expression& e = c_.expr;
        Interval rootv = eval(e, atom.root, b, &ws_.fwd);
        Interval narrowed = intersect(rootv, admissible(atom.rel));
        Box out = b;
        if (narrowed.is_empty()) {
            for (auto& comp : out.comps) comp = Interval::empty();
            return out;
        }
        std::vector<Interval>& cur = ws_.cur;
        cur = ws_.fwd;
        cur[(std::size_t)atom.root] = narrowed;
        for (int i = atom.root; i >= 0; --i) {
            if (cur[(std::size_t)i].is_empty()) continue;  // untouched or dead branch
            if (!backward(e, i, cur)) {
                for (auto& comp : out.comps) comp = Interval::empty();
                return out;
            }
        }
        // Collect variable narrowings (every occurrence intersects).
        for (int i = atom.root; i >= 0; --i) {
            const ExprNode& n = e.nodes[(std::size_t)i];
            if (n.kind != NodeKind::var) continue;
            if (ws_.fwd[(std::size_t)i].is_empty()) continue;  // unreachable node
            out[(std::size_t)n.a] =
                intersect(out[(std::size_t)n.a], cur[(std::size_t)i]);
            if (out[(std::size_t)n.a].is_empty()) {
                for (auto& comp : out.comps) comp = Interval::empty();
                return out;
            }
        }
        return out;
    }

    // Narrows the children of node i from cur[i]; false signals infeasibility.
    bool backward(const Expression& e, int i, std::vector<Interval>& cur) {
        const ExprNode& n = e.nodes[(std::size_t)i];
        const Interval y = cur[(std::size_t)i];
        auto set = [&](int child, Interval v) {
            cur[(std::size_t)child] = v;
            return !v.is_empty();
        };
        switch (n.kind) {
            case NodeKind::constant:
            case NodeKind::pi_const:
            case NodeKind::var:
                return true;
            case NodeKind::add: {
                if (!set(n.a, intersect(cur[n.a], y - cur[n.b]))) return false;
                return set(n.b, intersect(cur[n.b], y - cur[n.a]));
            }
            case NodeKind::sub: {
                if (!set(n.a, intersect(cur[n.a], y + cur[n.b]))) return false;
                return set(n.b, intersect(cur[n.b], cur[n.a] - y));
            }
            case NodeKind::mul: {
                if (!set(n.a, inv_mul(y, cur[n.b], cur[n.a]))) return false;
                return set(n.b, inv_mul(y, cur[n.a], cur[n.b]));
            }
            case NodeKind::div: {
                if (!set(n.a, intersect(cur[n.a], y * cur[n.b]))) return false;
                return set(n.b, inv_div_den(cur[n.a], y, cur[n.b]));
            }
            case NodeKind::neg:
                return set(n.a, intersect(cur[n.a], -y));
            case NodeKind::sqrt_fn:
                return set(n.a, intersect(cur[n.a],
                                          sqr(intersect(y, Interval(0.0, Interval::inf())))));
            case NodeKind::ln_fn:
                return set(n.a, intersect(cur[n.a], exp(y)));
            case NodeKind::exp_fn: {
                Interval ypos = intersect(y, Interval(0.0, Interval::inf()));
                if (ypos.is_empty()) return false;
                return set(n.a, intersect(cur[n.a], ln(ypos)));
            }
            case NodeKind::abs_fn: {
                Interval ypos = intersect(y, Interval(0.0, Interval::inf()));
                return set(n.a, signed_from_magnitude(cur[n.a], ypos));
            }
            case NodeKind::min_fn: {
                Interval bound_a(y.lo, cur[n.b].lo > y.hi ? y.hi : Interval::inf());
                if (!set(n.a, intersect(cur[n.a], bound_a))) return false;
                Interval bound_b(y.lo, cur[n.a].lo > y.hi ? y.hi : Interval::inf());
                return set(n.b, intersect(cur[n.b], bound_b));
            }
            case NodeKind::max_fn: {
                Interval bound_a(cur[n.b].hi < y.lo ? y.lo : -Interval::inf(), y.hi);
                if (!set(n.a, intersect(cur[n.a], bound_a))) return false;
                Interval bound_b(cur[n.a].hi < y.lo ? y.lo : -Interval::inf(), y.hi);
                return set(n.b, intersect(cur[n.b], bound_b));
            }
            case NodeKind::pow: {
                double r = n.val;
                Interval x = cur[n.a];
                if (r == std::floor(r) && std::abs(r) < 1e9) {
                    long nn = (long)r;
                    if (nn > 0 && nn % 2 == 0) {
                        Interval s = root_r(y, (double)nn);
                        return set(n.a, signed_from_magnitude(x, s));
                    }
                    if (nn > 0) {  // odd
                        return set(n.a, intersect(x, root_odd(y, nn)));
                    }
                    // nonpositive integer exponents: no useful inverse; skip
                    return true;
                }
                // fractional exponent: base is nonnegative by definition
                Interval xr = intersect(x, Interval(0.0, Interval::inf()));
                return set(n.a, intersect(xr, root_r(y, r)));
            }
            case NodeKind::piecewise:
                return true;  // sound no-op
        }
        return true;
    }

    const Constraint& c_;
    ContractorWorkspace& ws_;
};

}  // namespace

Box revise(const Constraint& c, const Box& b, ContractorWorkspace* ws) {
    ContractorWorkspace local;
    return Revisor(c, ws ? *ws : local).run(b);
}

Box DR(const Box& b, const ConstraintRefs& cs, const ContractorConfig& cfg) {
    if (b.is_empty() || cs.empty()) return b;
    ContractorWorkspace ws;
    Box cur = b;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        Box before = cur;
        for (const Constraint* c : cs) {
            cur = revise(*c, cur, &ws);
            if (cur.is_empty()) return cur;
        }
        bool improved = false;
        for (std::size_t i = 0; i < cur.size() && !improved; ++i) {
            double wb = before[i].width();
            if (wb > 0 && (wb - cur[i].width()) > cfg.improvement_threshold * wb)
                improved = true;
        }
        if (!improved) break;
    }
    if (cfg.active_mask) {
        for (std::size_t i = 0; i < cur.size(); ++i)
            if (!(*cfg.active_mask)[i]) cur[i] = b[i];
    }
    return cur;
}

Box CB_relaxed(const Box& b, const Constraint& relaxed,
               const ContractorConfig& cfg) {
    if (b.is_empty() || relaxed.always_true) return b;
    const Constraint* p = &relaxed;
    return DR(b, {p}, cfg);
}

Box CB1(const Box& b, const Constraint& c, const ContractorConfig& cfg) {
    if (b.is_empty()) return b;
    return CB_relaxed(b, relax_negation(c), cfg);
}

Box CB(const Box& b, const ConstraintRefs& cs, const ContractorConfig& cfg) {
    if (b.is_empty() || cs.empty()) {
        if (cs.empty()) {
            Box e = b;
            for (auto& comp : e.comps) comp = Interval::empty();
            return e;
        }
        return b;
    }
    Box acc(b.size());
    bool first = true;
    for (const Constraint* c : cs) {
        Box r = CB1(b, *c, cfg);
        if (r.is_empty()) continue;
        acc = first ? r : hull(acc, r);
        first = false;
    }
    if (first)
        for (auto& comp : acc.comps) comp = Interval::empty();
    return acc;
}

Feasibility FC(const Box& b, const ConstraintRefs& cs,
               const ContractorConfig& cfg) {
    if (cs.empty()) return Feasibility::feasible;
    if (DR(b, cs, cfg).is_empty()) return Feasibility::infeasible;
    if (CB(b, cs, cfg).is_empty()) return Feasibility::feasible;
    return Feasibility::unknown;
}

bool FC_feasible(const Box& b, const ConstraintRefs& cs,
                 const ContractorConfig& cfg) {
    if (cs.empty()) return true;
    return CB(b, cs, cfg).is_empty();
}

}  // namespace bcs
