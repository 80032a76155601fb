#ifndef BCS_SEARCH_HPP
#define BCS_SEARCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "bcs/contractor.hpp"
#include "bcs/split.hpp"

namespace bcs {

enum class Algo { dmbc, dmbc_plus, uca5, uca6, uca6_plus };
enum class SplitPolicy { ds, bs_ds };
enum class Order { dfs, bfs };

const char* algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& s);

struct SolveOptions {
    std::vector<double> eps;                // per-variable; see eps_vector()
    std::optional<SplitPolicy> split;       // default: ds for dmbc*, bs-ds for uca*
    std::optional<bool> memo;               // default: on only for uca6
    double frag_ratio = 0.25;
    int d_stop = 1;
    Order order = Order::dfs;
    int cb_first_k = 0;                     // 0 = fresh CB for all running constraints
    bool combine_boundary = false;          // EVR-combine DimStop boundary cells too
    ContractorConfig contractor;
};

// Broadcast helper: scalar epsilon to a per-variable vector.
std::vector<double> eps_vector(double eps, std::size_t dim);

struct BoundaryBox {
    Box box;
    std::vector<int> running;  // ids of constraints still unresolved here
};

struct SolveStats {
    double wall_seconds = 0.0;
    long long inner_count = 0;
    long long boundary_count = 0;
    long long dr_calls = 0;
    long long cb_calls = 0;
    long long ds_splits = 0;
    long long bs_splits = 0;
    long long nodes_expanded = 0;
    long double inner_volume = 0.0L;
    long double boundary_volume = 0.0L;
    long double outer_volume = 0.0L;
    // inner / (inner + boundary); negative when undefined (no boxes).
    double ratio = -1.0;
};

struct PavingResult {
    std::vector<Box> inner;
    std::vector<BoundaryBox> boundary;
    SolveStats stats;
};

// Runs the selected branch-and-prune algorithm to completion.
PavingResult solve(const NCSP& p, Algo algo, const SolveOptions& opts);

}  // namespace bcs

#endif  // BCS_SEARCH_HPP
