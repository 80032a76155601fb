#ifndef BCS_CONSTRAINT_HPP
#define BCS_CONSTRAINT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "bcs/expr.hpp"

namespace bcs {

// One comparison "expr rel 0" inside a constraint.
struct ConstraintAtom {
    int root;
    Rel rel;
};

// A constraint normalized to "expression rel 0"; a disjunctive constraint is
// a non-empty OR of atoms sharing one expression arena. `always_true` marks
// the degenerate "0 = 0" produced by relaxing the negation of an equation.
struct Constraint {
    Expression expr;
    std::vector<ConstraintAtom> atoms;
    int id = -1;
    bool always_true = false;
    // Atoms are a disjunction by default; relax_negation of a disjunction
    // yields a conjunction and sets this flag.
    bool conjunctive = false;

    bool is_disjunctive() const { return atoms.size() > 1 && !conjunctive; }
    bool is_equality() const {
        return atoms.size() == 1 && atoms[0].rel == Rel::eq;
    }

    std::uint64_t vars() const {
        std::uint64_t m = 0;
        for (const auto& a : atoms) m |= var_mask(expr, a.root);
        return m;
    }

    // Enclosure test helpers used all over the solver.
    bool atom_satisfied(const ConstraintAtom& a, const std::vector<double>& p,
                        double slack) const {
        double v = point_eval(expr, a.root, p);
        if (std::isnan(v)) return false;
        double adj = v;
        // Slack loosens the comparison: v <= 0 becomes v <= slack.
        switch (a.rel) {
            case Rel::le: case Rel::lt: adj = v - slack; break;
            case Rel::ge: case Rel::gt: adj = v + slack; break;
            case Rel::eq: return std::abs(v) <= slack;
            case Rel::ne: break;
        }
        return rel_holds(a.rel, adj);
    }

    bool point_satisfies(const std::vector<double>& p, double slack = 0.0) const {
        if (always_true) return true;
        if (conjunctive) {
            for (const auto& a : atoms)
                if (!atom_satisfied(a, p, slack)) return false;
            return true;
        }
        for (const auto& a : atoms)
            if (atom_satisfied(a, p, slack)) return true;
        return false;
    }
};

inline Constraint negate(const Constraint& c) {
    if (c.is_disjunctive())
        throw std::invalid_argument("negation of a disjunctive constraint is unsupported");
    Constraint r = c;
    r.atoms[0].rel = rel_negate(r.atoms[0].rel);
    r.always_true = false;
    return r;
}

// Closed relaxed negation: the smallest closed constraint containing the
// complement. For an equality the complement (!=) has no useful closed
// relaxation, so the result is the always-true constraint and complementary
// boxing degenerates to the identity. For a disjunction the relaxed negation
// is the conjunction of the atoms' relaxed negations; it is returned as a
// multi-atom constraint with `conjunction` semantics understood by DR.
inline Constraint relax_negation(const Constraint& c) {
    Constraint r = c;
    r.always_true = false;
    r.conjunctive = c.atoms.size() > 1;
    bool all_trivial = true;
    for (auto& a : r.atoms) {
        switch (a.rel) {
            case Rel::le: case Rel::lt: a.rel = Rel::ge; all_trivial = false; break;
            case Rel::ge: case Rel::gt: a.rel = Rel::le; all_trivial = false; break;
            case Rel::eq: {
                // relaxed ¬(f = 0) is trivially true; mark by 0 = 0
                a.rel = Rel::eq;
                a.root = r.expr.add_const(0.0);
                break;
            }
            case Rel::ne: a.rel = Rel::eq; all_trivial = false; break;
        }
    }
    if (all_trivial) r.always_true = true;
    return r;
}

using ConstraintRefs = std::vector<const Constraint*>;

struct NCSP {
    std::string name;
    std::vector<std::string> var_names;
    Box domain;
    std::vector<Constraint> constraints;

    std::size_t dim() const { return var_names.size(); }
};

}  // namespace bcs

#endif  // BCS_CONSTRAINT_HPP
