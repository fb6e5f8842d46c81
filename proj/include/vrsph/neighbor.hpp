#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "vrsph/core.hpp"
#include "vrsph/particle_set.hpp"

namespace vrsph {

/// Per-axis wrap-around used by the channel-flow setup; period must exceed
/// twice the search radius on any periodic axis.
template <int D>
struct Periodicity {
    std::array<bool, D> periodic{};
    std::array<double, D> period{};
};

/// Fixed-radius neighbor lists Gamma_i = { j != i : ||x_i - x_j|| < h } in
/// CSR layout, with the displacement x_i - x_j (minimum image) and distance
/// cached per pair. Rows are sorted by neighbor index.
template <int D>
struct NeighborTable {
    double h = 0.0;
    std::vector<int> offsets;  // size N+1
    std::vector<int> nbr;
    std::vector<Vec<D>> disp;  // x_i - x_j
    std::vector<double> dist;

    int count(int i) const { return offsets[i + 1] - offsets[i]; }
    int begin(int i) const { return offsets[i]; }
    int end(int i) const { return offsets[i + 1]; }
};

template <int D>
NeighborTable<D> build_neighbor_table(const ParticleSet<D>& set, double h,
                                      const Periodicity<D>& topo = {}) {
    require(h > 0.0, "build_neighbor_table: h must be positive");
    const int n = set.total();
    for (int k = 0; k < D; ++k)
        if (topo.periodic[k])
            require(topo.period[k] > 2.0 * h, "build_neighbor_table: period must exceed 2h");

    NeighborTable<D> table;
    table.h = h;
    table.offsets.assign(n + 1, 0);

    const auto min_image = [&](Vec<D> d) {
        for (int k = 0; k < D; ++k)
            if (topo.periodic[k]) d[k] -= topo.period[k] * std::round(d[k] / topo.period[k]);
        return d;
    };

    // Cell binning. Periodic axes tile the period exactly with cells >= h;
    // open axes use the particle bounding box.
    std::array<double, D> origin{}, cell{};
    std::array<int, D> ncell{};
    for (int k = 0; k < D; ++k) {
        if (topo.periodic[k]) {
            origin[k] = 0.0;  // positions reduced mod period below
            ncell[k] = std::max(1, static_cast<int>(std::floor(topo.period[k] / h)));
            cell[k] = topo.period[k] / ncell[k];
        } else {
            double lo = set.positions[0][k], hi = lo;
            for (const auto& x : set.positions) {
                lo = std::min(lo, x[k]);
                hi = std::max(hi, x[k]);
            }
            origin[k] = lo;
            ncell[k] = std::max(1, static_cast<int>(std::floor((hi - lo) / h)) + 1);
            cell[k] = h;
        }
    }
    long long total_cells = 1;
    for (int k = 0; k < D; ++k) total_cells *= ncell[k];

    const auto cell_of = [&](const Vec<D>& x) {
        long long id = 0;
        for (int k = 0; k < D; ++k) {
            double v = x[k] - origin[k];
            if (topo.periodic[k]) v -= topo.period[k] * std::floor(v / topo.period[k]);
            int c = static_cast<int>(std::floor(v / cell[k]));
            c = std::clamp(c, 0, ncell[k] - 1);
            id = id * ncell[k] + c;
        }
        return id;
    };
    const auto cell_coords = [&](long long id, std::array<int, D>& c) {
        for (int k = D - 1; k >= 0; --k) {
            c[k] = static_cast<int>(id % ncell[k]);
            id /= ncell[k];
        }
    };

    std::vector<long long> cell_id(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) cell_id[i] = cell_of(set.positions[i]);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cell_id[a] < cell_id[b]; });
    std::vector<long long> starts;  // (cell, first index into order) pairs
    std::vector<int> start_pos;
    for (int p = 0; p < n; ++p)
        if (p == 0 || cell_id[order[p]] != cell_id[order[p - 1]]) {
            starts.push_back(cell_id[order[p]]);
            start_pos.push_back(p);
        }
    start_pos.push_back(n);

    const auto range_of_cell = [&](long long id, int& lo, int& hi) {
        auto it = std::lower_bound(starts.begin(), starts.end(), id);
        if (it == starts.end() || *it != id) {
            lo = hi = 0;
            return;
        }
        const int s = static_cast<int>(it - starts.begin());
        lo = start_pos[s];
        hi = start_pos[s + 1];
    };

    std::vector<std::vector<int>> rows(n);
    std::array<int, D> cc{}, offset{}, probe{};
    for (int i = 0; i < n; ++i) {
        cell_coords(cell_id[i], cc);
        offset.fill(-1);
        while (true) {
            bool valid = true;
            for (int k = 0; k < D; ++k) {
                probe[k] = cc[k] + offset[k];
                if (topo.periodic[k]) {
                    probe[k] = (probe[k] + ncell[k]) % ncell[k];
                } else if (probe[k] < 0 || probe[k] >= ncell[k]) {
                    valid = false;
                }
            }
            if (valid) {
                long long id = 0;
                for (int k = 0; k < D; ++k) id = id * ncell[k] + probe[k];
                int lo, hi;
                range_of_cell(id, lo, hi);
                for (int p = lo; p < hi; ++p) {
                    const int j = order[p];
                    if (j == i) continue;
                    const Vec<D> d = min_image(set.positions[i] - set.positions[j]);
                    if (d.norm2() < h * h) rows[i].push_back(j);
                }
            }
            int k = D - 1;
            for (; k >= 0; --k) {
                if (++offset[k] <= 1) break;
                offset[k] = -1;
            }
            if (k < 0) break;
        }
        std::sort(rows[i].begin(), rows[i].end());
        rows[i].erase(std::unique(rows[i].begin(), rows[i].end()), rows[i].end());
        table.offsets[i + 1] = table.offsets[i] + static_cast<int>(rows[i].size());
    }

    table.nbr.reserve(table.offsets[n]);
    table.disp.reserve(table.offsets[n]);
    table.dist.reserve(table.offsets[n]);
    for (int i = 0; i < n; ++i)
        for (int j : rows[i]) {
            const Vec<D> d = min_image(set.positions[i] - set.positions[j]);
            table.nbr.push_back(j);
            table.disp.push_back(d);
            table.dist.push_back(d.norm());
        }
    return table;
}

}  // namespace vrsph
