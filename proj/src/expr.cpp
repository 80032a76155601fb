#include "bcs/expr.hpp"

#include <cassert>
#include <charconv>
#include <cmath>

namespace bcs {

const char* rel_text(Rel r) {
    switch (r) {
        case Rel::le: return "<=";
        case Rel::lt: return "<";
        case Rel::ge: return ">=";
        case Rel::gt: return ">";
        case Rel::eq: return "=";
        case Rel::ne: return "!=";
    }
    return "?";
}

Rel rel_negate(Rel r) {
    switch (r) {
        case Rel::le: return Rel::gt;
        case Rel::lt: return Rel::ge;
        case Rel::ge: return Rel::lt;
        case Rel::gt: return Rel::le;
        case Rel::eq: return Rel::ne;
        case Rel::ne: return Rel::eq;
    }
    return r;
}

bool rel_holds(Rel r, double v) {
    if (std::isnan(v)) return false;
    switch (r) {
        case Rel::le: return v <= 0.0;
        case Rel::lt: return v < 0.0;
        case Rel::ge: return v >= 0.0;
        case Rel::gt: return v > 0.0;
        case Rel::eq: return v == 0.0;
        case Rel::ne: return v != 0.0;
    }
    return false;
}

namespace {

// "guard rel 0 possibly holds on g" — over-approximates: true whenever some
// point of the enclosure satisfies the relation.
bool possibly_holds(Rel r, const Interval& g) {
    if (g.is_empty()) return false;
    switch (r) {
        case Rel::le: return g.lo <= 0.0;
        case Rel::lt: return g.lo < 0.0;
        case Rel::ge: return g.hi >= 0.0;
        case Rel::gt: return g.hi > 0.0;
        case Rel::eq: return g.contains(0.0);
        case Rel::ne: return !(g.lo == 0.0 && g.hi == 0.0);
    }
    return true;
}

bool possibly_fails(Rel r, const Interval& g) {
    return possibly_holds(rel_negate(r), g);
}

Interval eval_pow(const Interval& x, double r) {
    if (r == std::floor(r) && std::abs(r) < 1e9)
        return pow_i(x, (long)r);
    return pow_r(x, r);
}

}  // namespace

Interval eval(const Expression& e, int root, const Box& b,
              std::vector<Interval>* trace) {
    std::vector<Interval> local;
    std::vector<Interval>& v = trace ? *trace : local;
    v.assign(e.nodes.size(), Interval::empty());
    for (int i = 0; i <= root; ++i) {
        const ExprNode& n = e.nodes[i];
        switch (n.kind) {
            case NodeKind::constant: v[i] = Interval(n.val); break;
            case NodeKind::pi_const: v[i] = pi_enclosure(); break;
            case NodeKind::var:      v[i] = b[(std::size_t)n.a]; break;
            case NodeKind::add:      v[i] = v[n.a] + v[n.b]; break;
            case NodeKind::sub:      v[i] = v[n.a] - v[n.b]; break;
            case NodeKind::mul:      v[i] = v[n.a] * v[n.b]; break;
            case NodeKind::div:      v[i] = v[n.a] / v[n.b]; break;
            case NodeKind::neg:      v[i] = -v[n.a]; break;
            case NodeKind::sqrt_fn:  v[i] = sqrt(v[n.a]); break;
            case NodeKind::ln_fn:    v[i] = ln(v[n.a]); break;
            case NodeKind::exp_fn:   v[i] = exp(v[n.a]); break;
            case NodeKind::abs_fn:   v[i] = abs(v[n.a]); break;
            case NodeKind::min_fn:   v[i] = min2(v[n.a], v[n.b]); break;
            case NodeKind::max_fn:   v[i] = max2(v[n.a], v[n.b]); break;
            case NodeKind::pow:      v[i] = eval_pow(v[n.a], n.val); break;
            case NodeKind::piecewise: {
                const PiecewiseData& pw = e.pws[(std::size_t)n.a];
                Interval acc = Interval::empty();
                bool earlier_may_fail = true;  // all earlier guards possibly fail
                for (const auto& c : pw.cases) {
                    if (earlier_may_fail && possibly_holds(c.rel, v[c.guard]))
                        acc = hull(acc, v[c.branch]);
                    earlier_may_fail =
                        earlier_may_fail && possibly_fails(c.rel, v[c.guard]);
                    if (!earlier_may_fail) break;
                }
                if (earlier_may_fail) acc = hull(acc, v[pw.else_branch]);
                v[i] = acc;
                break;
            }
        }
    }
    return v[root];
}

double point_eval(const Expression& e, int root, const std::vector<double>& p) {
    const ExprNode& n = e.nodes[root];
    auto rec = [&](int c) { return point_eval(e, c, p); };
    switch (n.kind) {
        case NodeKind::constant: return n.val;
        case NodeKind::pi_const: return 3.14159265358979323846;
        case NodeKind::var:      return p[(std::size_t)n.a];
        case NodeKind::add:      return rec(n.a) + rec(n.b);
        case NodeKind::sub:      return rec(n.a) - rec(n.b);
        case NodeKind::mul:      return rec(n.a) * rec(n.b);
        case NodeKind::div:      return rec(n.a) / rec(n.b);
        case NodeKind::neg:      return -rec(n.a);
        case NodeKind::sqrt_fn: {
            double x = rec(n.a);
            return x < 0 ? std::nan("") : std::sqrt(x);
        }
        case NodeKind::ln_fn: {
            double x = rec(n.a);
            return x <= 0 ? (x == 0 ? -Interval::inf() : std::nan(""))
                          : std::log(x);
        }
        case NodeKind::exp_fn:   return std::exp(rec(n.a));
        case NodeKind::abs_fn:   return std::abs(rec(n.a));
        case NodeKind::min_fn:   return std::min(rec(n.a), rec(n.b));
        case NodeKind::max_fn:   return std::max(rec(n.a), rec(n.b));
        case NodeKind::pow: {
            double x = rec(n.a);
            if (n.val == std::floor(n.val) && std::abs(n.val) < 1e9)
                return std::pow(x, n.val);
            return x < 0 ? std::nan("") : std::pow(x, n.val);
        }
        case NodeKind::piecewise: {
            const PiecewiseData& pw = e.pws[(std::size_t)n.a];
            for (const auto& c : pw.cases)
                if (rel_holds(c.rel, rec(c.guard))) return rec(c.branch);
            return rec(pw.else_branch);
        }
    }
    return std::nan("");
}

std::uint64_t var_mask(const Expression& e, int root) {
    const ExprNode& n = e.nodes[root];
    switch (n.kind) {
        case NodeKind::constant:
        case NodeKind::pi_const: return 0;
        case NodeKind::var:      return std::uint64_t(1) << n.a;
        case NodeKind::piecewise: {
            const PiecewiseData& pw = e.pws[(std::size_t)n.a];
            std::uint64_t m = var_mask(e, pw.else_branch);
            for (const auto& c : pw.cases)
                m |= var_mask(e, c.guard) | var_mask(e, c.branch);
            return m;
        }
        default: {
            std::uint64_t m = var_mask(e, n.a);
            if (n.b >= 0) m |= var_mask(e, n.b);
            return m;
        }
    }
}

std::string to_string(const Interval& x) {
    if (x.is_empty()) return "[empty]";
    return "[" + format_double(x.lo) + ", " + format_double(x.hi) + "]";
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_text(const Expression& e, int root,
                    const std::vector<std::string>& names) {
    const ExprNode& n = e.nodes[root];
    auto rec = [&](int c) { return to_text(e, c, names); };
    switch (n.kind) {
        case NodeKind::constant: return format_double(n.val);
        case NodeKind::pi_const: return "pi";
        case NodeKind::var:      return names[(std::size_t)n.a];
        case NodeKind::add: return "(" + rec(n.a) + " + " + rec(n.b) + ")";
        case NodeKind::sub: return "(" + rec(n.a) + " - " + rec(n.b) + ")";
        case NodeKind::mul: return "(" + rec(n.a) + " * " + rec(n.b) + ")";
        case NodeKind::div: return "(" + rec(n.a) + " / " + rec(n.b) + ")";
        case NodeKind::neg: return "(-" + rec(n.a) + ")";
        case NodeKind::sqrt_fn: return "sqrt(" + rec(n.a) + ")";
        case NodeKind::ln_fn:   return "ln(" + rec(n.a) + ")";
        case NodeKind::exp_fn:  return "exp(" + rec(n.a) + ")";
        case NodeKind::abs_fn:  return "abs(" + rec(n.a) + ")";
        case NodeKind::min_fn:  return "min(" + rec(n.a) + ", " + rec(n.b) + ")";
        case NodeKind::max_fn:  return "max(" + rec(n.a) + ", " + rec(n.b) + ")";
        case NodeKind::pow: {
            std::string r = format_double(n.val);
            if (n.val < 0) r = "(" + r + ")";
            return "(" + rec(n.a) + " ^ " + r + ")";
        }
        case NodeKind::piecewise: {
            const PiecewiseData& pw = e.pws[(std::size_t)n.a];
            std::string s = "piecewise(";
            for (const auto& c : pw.cases) {
                s += "(" + rec(c.guard) + " " + rel_text(c.rel) + " 0) -> " +
                     rec(c.branch) + "; ";
            }
            s += "else -> " + rec(pw.else_branch) + ")";
            return s;
        }
    }
    return "?";
}

bool tree_equal(const Expression& ea, int ra, const Expression& eb, int rb) {
    const ExprNode& x = ea.nodes[ra];
    const ExprNode& y = eb.nodes[rb];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case NodeKind::constant:
            return x.val == y.val ||
                   (std::isnan(x.val) && std::isnan(y.val));
        case NodeKind::pi_const: return true;
        case NodeKind::var: return x.a == y.a;
        case NodeKind::pow:
            return x.val == y.val && tree_equal(ea, x.a, eb, y.a);
        case NodeKind::piecewise: {
            const PiecewiseData& pa = ea.pws[(std::size_t)x.a];
            const PiecewiseData& pb = eb.pws[(std::size_t)y.a];
            if (pa.cases.size() != pb.cases.size()) return false;
            for (std::size_t i = 0; i < pa.cases.size(); ++i) {
                if (pa.cases[i].rel != pb.cases[i].rel) return false;
                if (!tree_equal(ea, pa.cases[i].guard, eb, pb.cases[i].guard))
                    return false;
                if (!tree_equal(ea, pa.cases[i].branch, eb, pb.cases[i].branch))
                    return false;
            }
            return tree_equal(ea, pa.else_branch, eb, pb.else_branch);
        }
        default:
            if (!tree_equal(ea, x.a, eb, y.a)) return false;
            if ((x.b >= 0) != (y.b >= 0)) return false;
            return x.b < 0 || tree_equal(ea, x.b, eb, y.b);
    }
}

}  // namespace bcs
