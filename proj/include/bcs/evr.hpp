#ifndef BCS_EVR_HPP
#define BCS_EVR_HPP

#include <vector>

#include "bcs/box.hpp"

namespace bcs {

// Coordinate-compressed grid over a subset of dimensions.
struct Grid {
    std::vector<int> dims;                       // active dimension indices
    std::vector<std::vector<double>> coords;     // sorted distinct, per dim
};

// Extreme vertex representation of a griddy polyhedron: the unique vertex
// set whose XOR of forward cones reproduces the point set. Vertices are
// stored as grid-index tuples; `template_box` carries the shared intervals
// of the non-active dimensions.
struct ExtremeVertexSet {
    Grid grid;
    std::vector<std::vector<int>> vertices;  // sorted lexicographically
    Box template_box;

    // Vertex positions as coordinate tuples (intrinsic to the point set).
    std::vector<std::vector<double>> vertex_coords() const;
};

// Builds the EVR of a union of pairwise interior-disjoint boxes that agree
// on all non-active dimensions. A grid point is an extreme vertex iff its
// neighborhood {x-1, x}^d contains an odd number of black (covered) cells.
ExtremeVertexSet dbr_to_evr(const std::vector<Box>& boxes,
                            const std::vector<int>& dims);

// Converts back to a disjoint box cover: sweeps the first active dimension,
// recursing on sections and merging adjacent slabs with identical sections.
std::vector<Box> evr_to_dbr(const ExtremeVertexSet& evr);

// Round-trip compaction; point-set preserving.
std::vector<Box> combine(const std::vector<Box>& boxes,
                         const std::vector<int>& dims);

}  // namespace bcs

#endif  // BCS_EVR_HPP
