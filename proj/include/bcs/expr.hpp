#ifndef BCS_EXPR_HPP
#define BCS_EXPR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bcs/box.hpp"

namespace bcs {

enum class Rel { le, lt, ge, gt, eq, ne };

const char* rel_text(Rel r);
Rel rel_negate(Rel r);

// Relation satisfied by a scalar against zero (strictness respected).
bool rel_holds(Rel r, double v);

enum class NodeKind {
    constant,   // val
    pi_const,
    var,        // a = variable index
    add, sub, mul, div,   // a, b
    neg,        // a
    sqrt_fn, ln_fn, exp_fn, abs_fn,  // a
    min_fn, max_fn,                  // a, b
    pow,        // a, exponent in val
    piecewise,  // a = index into Expression::pws
};

struct ExprNode {
    NodeKind kind;
    int a = -1;
    int b = -1;
    double val = 0.0;
};

struct PiecewiseCase {
    int guard;   // node index; guard means "guard_expr rel 0"
    Rel rel;
    int branch;  // node index
};

struct PiecewiseData {
    std::vector<PiecewiseCase> cases;
    int else_branch;
};

// Arena of expression nodes. Children always precede parents, so a single
// forward sweep over node indices evaluates everything bottom-up. One arena
// may host several trees (the atoms of a disjunctive constraint).
struct Expression {
    std::vector<ExprNode> nodes;
    std::vector<PiecewiseData> pws;

    int add(NodeKind k, int a = -1, int b = -1, double val = 0.0) {
        nodes.push_back({k, a, b, val});
        return (int)nodes.size() - 1;
    }
    int add_const(double v) { return add(NodeKind::constant, -1, -1, v); }
};

// Natural interval extension of the subtree rooted at `root` over box `b`.
// If `trace` is given it is resized to the arena and filled with the
// enclosure of every node with index <= root (used by backward propagation).
Interval eval(const Expression& e, int root, const Box& b,
              std::vector<Interval>* trace = nullptr);

// Scalar evaluation at a point; NaN when the function is undefined there.
double point_eval(const Expression& e, int root, const std::vector<double>& p);

// Marks (bitset over variable indices, <= 64 variables) every variable
// occurring under `root`.
std::uint64_t var_mask(const Expression& e, int root);

// Problem-format rendering of the subtree (fully parenthesized, shortest
// round-trip decimals).
std::string to_text(const Expression& e, int root,
                    const std::vector<std::string>& var_names);

// Structural equality of two subtrees (used by the parse/print round-trip
// checks).
bool tree_equal(const Expression& ea, int ra, const Expression& eb, int rb);

// Shortest decimal string that re-parses to the same double.
std::string format_double(double v);

}  // namespace bcs

#endif  // BCS_EXPR_HPP
