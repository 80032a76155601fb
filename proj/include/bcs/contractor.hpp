#ifndef BCS_CONTRACTOR_HPP
#define BCS_CONTRACTOR_HPP

#include <vector>

#include "bcs/constraint.hpp"

namespace bcs {

struct ContractorConfig {
    double improvement_threshold = 0.01;  // relative width gain to keep sweeping
    int max_sweeps = 50;
    // When set, components of inactive variables are restored to their input
    // values after contraction (restricted-dimensional DR/CB).
    const std::vector<char>* active_mask = nullptr;
};

enum class Feasibility { feasible, infeasible, unknown };

// Scratch buffers reused across revise calls.
struct ContractorWorkspace {
    std::vector<Interval> fwd;
    std::vector<Interval> cur;
};

// One forward/backward propagation pass of the constraint over the box.
// Contractive (result is a subset of b) and correct (keeps every point of
// b that satisfies c). An empty result certifies that no point of b
// satisfies c.
Box revise(const Constraint& c, const Box& b, ContractorWorkspace* ws = nullptr);

// Domain reduction: revise all constraints repeatedly until the relative
// width improvement of every variable in a sweep falls below the threshold,
// the box empties, or max_sweeps is reached.
Box DR(const Box& b, const ConstraintRefs& cs, const ContractorConfig& cfg = {});

// Complementary boxing of a single constraint:
// DR(b, relax_negation(c)). Everything of b outside the result satisfies c.
Box CB1(const Box& b, const Constraint& c, const ContractorConfig& cfg = {});

// As CB1, but takes a precomputed relax_negation(c) (hot path in search).
Box CB_relaxed(const Box& b, const Constraint& relaxed,
               const ContractorConfig& cfg = {});

// Complementary boxing of a set: hull of the per-constraint complementary
// boxes. Everything of b outside the result satisfies every constraint.
Box CB(const Box& b, const ConstraintRefs& cs, const ContractorConfig& cfg = {});

// Monotonic inclusion test: infeasible iff DR empties, feasible iff CB
// empties, unknown otherwise.
Feasibility FC(const Box& b, const ConstraintRefs& cs,
               const ContractorConfig& cfg = {});

// Feasibility-only variant (the DMBC+ whole-set check).
bool FC_feasible(const Box& b, const ConstraintRefs& cs,
                 const ContractorConfig& cfg = {});

}  // namespace bcs

#endif  // BCS_CONTRACTOR_HPP
