#include "bcs/evr.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace bcs {

namespace {

// Dense cell-color array over the grid, row-major with dim 0 slowest.
struct CellArray {
    std::vector<int> shape;   // cells per dimension (coords - 1)
    std::vector<char> color;

    std::size_t index(const std::vector<int>& c) const {
        std::size_t idx = 0;
        for (std::size_t d = 0; d < shape.size(); ++d)
            idx = idx * (std::size_t)shape[d] + (std::size_t)c[d];
        return idx;
    }
};

int coord_index(const std::vector<double>& coords, double v) {
    auto it = std::lower_bound(coords.begin(), coords.end(), v);
    assert(it != coords.end() && *it == v);
    return (int)(it - coords.begin());
}

CellArray rasterize(const std::vector<Box>& boxes, const Grid& g) {
    CellArray cells;
    std::size_t total = 1;
    for (const auto& cs : g.coords) {
        cells.shape.push_back((int)cs.size() - 1);
        total *= (std::size_t)std::max<int>(0, (int)cs.size() - 1);
    }
    cells.color.assign(total, 0);
    std::size_t d = g.dims.size();
    for (const Box& b : boxes) {
        std::vector<int> lo(d), hi(d);
        for (std::size_t k = 0; k < d; ++k) {
            lo[k] = coord_index(g.coords[k], b[(std::size_t)g.dims[k]].lo);
            hi[k] = coord_index(g.coords[k], b[(std::size_t)g.dims[k]].hi);
        }
        // mark every cell in [lo, hi)
        std::vector<int> c = lo;
        bool degenerate = false;
        for (std::size_t k = 0; k < d; ++k)
            if (lo[k] >= hi[k]) degenerate = true;
        if (degenerate) continue;  // zero-volume box colors nothing
        for (;;) {
            cells.color[cells.index(c)] = 1;
            std::size_t k = d;
            bool done = true;
            while (k > 0) {
                --k;
                if (++c[k] < hi[k]) { done = false; break; }
                c[k] = lo[k];
            }
            if (done) break;
        }
    }
    return cells;
}

}  // namespace

std::vector<std::vector<double>> ExtremeVertexSet::vertex_coords() const {
    std::vector<std::vector<double>> out;
    out.reserve(vertices.size());
    for (const auto& v : vertices) {
        std::vector<double> c(v.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            c[k] = grid.coords[k][(std::size_t)v[k]];
        out.push_back(std::move(c));
    }
    return out;
}

ExtremeVertexSet dbr_to_evr(const std::vector<Box>& boxes,
                            const std::vector<int>& dims) {
    ExtremeVertexSet evr;
    evr.grid.dims = dims;
    evr.grid.coords.resize(dims.size());
    if (boxes.empty()) return evr;
    evr.template_box = boxes[0];
    // Non-active dimensions must agree across inputs.
    for (const Box& b : boxes) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            bool active = std::find(dims.begin(), dims.end(), (int)i) != dims.end();
            if (!active && !(b[i] == evr.template_box[i]))
                throw std::invalid_argument(
                    "dbr_to_evr: boxes disagree on a non-active dimension");
        }
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::vector<double>& cs = evr.grid.coords[k];
        for (const Box& b : boxes) {
            cs.push_back(b[(std::size_t)dims[k]].lo);
            cs.push_back(b[(std::size_t)dims[k]].hi);
        }
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    }
    CellArray cells = rasterize(boxes, evr.grid);
    // Enumerate grid points; count black cells in the neighborhood
    // {x_k - 1, x_k} per dimension.
    std::size_t d = dims.size();
    std::vector<int> npts(d);
    for (std::size_t k = 0; k < d; ++k) npts[k] = (int)evr.grid.coords[k].size();
    std::vector<int> x(d, 0);
    if (d == 0) return evr;
    for (;;) {
        int parity = 0;
        std::vector<int> c(d);
        std::vector<int> pick(d, 0);  // 0 => cell x_k - 1, 1 => cell x_k
        for (;;) {
            bool valid = true;
            for (std::size_t k = 0; k < d; ++k) {
                c[k] = x[k] - 1 + pick[k];
                if (c[k] < 0 || c[k] >= cells.shape[k]) { valid = false; break; }
            }
            if (valid) parity ^= cells.color[cells.index(c)];
            std::size_t k = d;
            bool done = true;
            while (k > 0) {
                --k;
                if (++pick[k] <= 1) { done = false; break; }
                pick[k] = 0;
            }
            if (done) break;
        }
        if (parity) evr.vertices.push_back(x);
        std::size_t k = d;
        bool done = true;
        while (k > 0) {
            --k;
            if (++x[k] < npts[k]) { done = false; break; }
            x[k] = 0;
        }
        if (done) break;
    }
    std::sort(evr.vertices.begin(), evr.vertices.end());
    return evr;
}

namespace {

// Recursive slab decomposition of a dense boolean cell array. `offsets`
// indexes into the flattened array; returns index ranges [lo, hi) per axis.
struct IdxBox {
    std::vector<std::pair<int, int>> ranges;
};

void decompose(const char* data, const std::vector<int>& shape,
               const std::vector<std::size_t>& strides, std::size_t axis,
               std::size_t base, std::vector<IdxBox>& out) {
    std::size_t d = shape.size();
    if (axis == d - 1) {
        // 1-D: merge consecutive true cells.
        int i = 0;
        while (i < shape[axis]) {
            if (!data[base + (std::size_t)i * strides[axis]]) { ++i; continue; }
            int j = i;
            while (j < shape[axis] && data[base + (std::size_t)j * strides[axis]]) ++j;
            IdxBox ib;
            ib.ranges.push_back({i, j});
            out.push_back(std::move(ib));
            i = j;
        }
        return;
    }
    // Group adjacent sections with identical content.
    std::size_t section_len = strides[axis];  // contiguous tail size
    auto same = [&](int a, int b) {
        const char* pa = data + base + (std::size_t)a * strides[axis];
        const char* pb = data + base + (std::size_t)b * strides[axis];
        return std::equal(pa, pa + section_len, pb);
    };
    int i = 0;
    while (i < shape[axis]) {
        int j = i + 1;
        while (j < shape[axis] && same(i, j)) ++j;
        std::vector<IdxBox> sub;
        decompose(data, shape, strides, axis + 1,
                  base + (std::size_t)i * strides[axis], sub);
        for (auto& s : sub) {
            IdxBox ib;
            ib.ranges.push_back({i, j});
            for (auto& r : s.ranges) ib.ranges.push_back(r);
            out.push_back(std::move(ib));
        }
        i = j;
    }
}

}  // namespace

std::vector<Box> evr_to_dbr(const ExtremeVertexSet& evr) {
    std::vector<Box> out;
    if (evr.vertices.empty()) return out;
    std::size_t d = evr.grid.dims.size();
    if (d == 0) return out;
    // Reconstruct the cell coloring via the XOR-of-forward-cones identity:
    // a cell (identified by its lower corner x) is black iff the number of
    // vertices v <= x (componentwise) is odd.
    CellArray cells;
    std::size_t total = 1;
    for (const auto& cs : evr.grid.coords) {
        cells.shape.push_back((int)cs.size() - 1);
        total *= (std::size_t)std::max<int>(0, (int)cs.size() - 1);
    }
    cells.color.assign(total, 0);
    std::vector<int> c(d, 0);
    if (total > 0) {
        for (;;) {
            int parity = 0;
            for (const auto& v : evr.vertices) {
                bool le = true;
                for (std::size_t k = 0; k < d; ++k)
                    if (v[k] > c[k]) { le = false; break; }
                parity ^= (int)le;
            }
            cells.color[cells.index(c)] = (char)parity;
            std::size_t k = d;
            bool done = true;
            while (k > 0) {
                --k;
                if (++c[k] < cells.shape[k]) { done = false; break; }
                c[k] = 0;
            }
            if (done) break;
        }
    }
    std::vector<std::size_t> strides(d, 1);
    for (std::size_t k = d - 1; k > 0; --k)
        strides[k - 1] = strides[k] * (std::size_t)cells.shape[k];
    std::vector<IdxBox> idx_boxes;
    decompose(cells.color.data(), cells.shape, strides, 0, 0, idx_boxes);
    for (const auto& ib : idx_boxes) {
        Box b = evr.template_box;
        for (std::size_t k = 0; k < d; ++k) {
            const auto& cs = evr.grid.coords[k];
            b[(std::size_t)evr.grid.dims[k]] =
                Interval(cs[(std::size_t)ib.ranges[k].first],
                         cs[(std::size_t)ib.ranges[k].second]);
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Box> combine(const std::vector<Box>& boxes,
                         const std::vector<int>& dims) {
    if (boxes.empty() || dims.empty()) return boxes;
    return evr_to_dbr(dbr_to_evr(boxes, dims));
}

}  // namespace bcs
