#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vrsph/core.hpp"

namespace vrsph {

enum class ParticleKind : std::uint8_t {
    Interior,  // strictly inside the domain
    Boundary,  // on the domain boundary
    Virtual,   // padding shells outside the domain (kernel support only)
};

/// Particle distribution X_N over a box domain. Particles 0..n_interior-1 are
/// interior; the rest are boundary or virtual padding. Immutable after
/// construction by the generators.
template <int D>
struct ParticleSet {
    std::vector<Vec<D>> positions;
    std::vector<ParticleKind> kind;
    int n_interior = 0;
    Box<D> domain{};
    double delta_x = 0.0;  // average spacing |Omega|^{1/d} / N^{1/d}

    int total() const { return static_cast<int>(positions.size()); }

    /// Particles counted by the paper's X_N: everything except virtual padding.
    int n_domain() const {
        int n = 0;
        for (auto k : kind)
            if (k != ParticleKind::Virtual) ++n;
        return n;
    }
    bool is_interior(int i) const { return kind[static_cast<std::size_t>(i)] == ParticleKind::Interior; }
};

namespace detail {

template <int D>
void check_cubic_box(const Box<D>& box) {
    for (int k = 1; k < D; ++k)
        require(std::abs(box.side(k) - box.side(0)) <= 1e-12 * std::abs(box.side(0)),
                "particle generators expect a cubic domain box");
    require(box.side(0) > 0.0, "domain box must have positive extent");
}

/// Iterate an integer lattice [lo, hi)^D in lexicographic order.
template <int D, typename Fn>
void for_each_lattice_site(int lo, int hi, Fn&& fn) {
    std::array<int, D> idx;
    idx.fill(lo);
    while (true) {
        fn(idx);
        int k = D - 1;
        for (; k >= 0; --k) {
            if (++idx[k] < hi) break;
            idx[k] = lo;
        }
        if (k < 0) break;
    }
}

template <int D>
void check_distinct(const ParticleSet<D>& set) {
    std::vector<Vec<D>> sorted = set.positions;
    std::sort(sorted.begin(), sorted.end(), [](const Vec<D>& a, const Vec<D>& b) { return a.c < b.c; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        require(!(sorted[i] == sorted[i - 1]), "particle positions must be pairwise distinct");
}

}  // namespace detail

/// Cell-centered lattice of n_per_dim^D particles with spacing dx = side/n,
/// plus `virtual_layers` lattice shells outside the domain so that interior
/// kernel supports are never truncated.
template <int D>
ParticleSet<D> generate_uniform(int n_per_dim, const Box<D>& domain, int virtual_layers) {
    require(n_per_dim >= 2, "generate_uniform: n_per_dim must be >= 2");
    require(virtual_layers >= 0, "generate_uniform: virtual_layers must be >= 0");
    detail::check_cubic_box(domain);

    const double dx = domain.side(0) / n_per_dim;
    ParticleSet<D> set;
    set.domain = domain;
    set.delta_x = dx;

    const auto site_pos = [&](const std::array<int, D>& idx) {
        Vec<D> x;
        for (int k = 0; k < D; ++k) x[k] = domain.lo[k] + (idx[k] + 0.5) * dx;
        return x;
    };
    detail::for_each_lattice_site<D>(0, n_per_dim, [&](const std::array<int, D>& idx) {
        set.positions.push_back(site_pos(idx));
        set.kind.push_back(ParticleKind::Interior);
    });
    set.n_interior = set.total();
    if (virtual_layers > 0) {
        detail::for_each_lattice_site<D>(-virtual_layers, n_per_dim + virtual_layers,
                                         [&](const std::array<int, D>& idx) {
                                             for (int k = 0; k < D; ++k)
                                                 if (idx[k] < 0 || idx[k] >= n_per_dim) {
                                                     set.positions.push_back(site_pos(idx));
                                                     set.kind.push_back(ParticleKind::Virtual);
                                                     return;
                                                 }
                                         });
    }
    return set;
}

/// Uniform lattice with every domain particle shifted per coordinate by an
/// independent draw from U(-amplitude*dx, +amplitude*dx). Virtual padding
/// stays on the lattice. Deterministic for a fixed seed.
template <int D>
ParticleSet<D> generate_perturbed(int n_per_dim, const Box<D>& domain, double amplitude,
                                  std::uint64_t seed, int virtual_layers = 0) {
    require(amplitude >= 0.0 && amplitude <= 0.5, "generate_perturbed: amplitude must be in [0, 0.5]");
    ParticleSet<D> set = generate_uniform(n_per_dim, domain, virtual_layers);
    const double dx = set.delta_x;

    Rng rng(seed);
    std::map<std::array<double, D>, int> seen;
    for (int i = set.n_interior; i < set.total(); ++i) seen.emplace(set.positions[i].c, i);

    for (int i = 0; i < set.n_interior; ++i) {
        const Vec<D> base = set.positions[i];
        bool placed = false;
        for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
            Vec<D> x = base;
            for (int k = 0; k < D; ++k) x[k] += amplitude * dx * (2.0 * rng.uniform01() - 1.0);
            if (seen.emplace(x.c, i).second) {
                set.positions[i] = x;
                placed = true;
            }
        }
        require(placed, "generate_perturbed: could not place particle " + std::to_string(i) +
                            " without collision");
    }
    return set;
}

/// Vertex lattice on the closed box with n_cells intervals per dimension:
/// sites at lo + i*dx, i = 0..n_cells. Sites on the box faces are boundary
/// particles; optional perturbation moves interior sites freely and boundary
/// sites only tangentially (they stay on the boundary). This is the layout
/// used by the Dirichlet Poisson runs.
template <int D>
ParticleSet<D> generate_dirichlet_lattice(int n_cells, const Box<D>& domain, double amplitude,
                                          std::uint64_t seed) {
    require(n_cells >= 2, "generate_dirichlet_lattice: n_cells must be >= 2");
    require(amplitude >= 0.0 && amplitude <= 0.5, "generate_dirichlet_lattice: amplitude in [0, 0.5]");
    detail::check_cubic_box(domain);
    const double dx = domain.side(0) / n_cells;

    std::vector<Vec<D>> interior, boundary;
    Rng rng(seed);
    detail::for_each_lattice_site<D>(0, n_cells + 1, [&](const std::array<int, D>& idx) {
        Vec<D> x;
        bool on_boundary = false;
        std::array<bool, D> clamped{};
        for (int k = 0; k < D; ++k) {
            x[k] = domain.lo[k] + idx[k] * dx;
            clamped[k] = (idx[k] == 0 || idx[k] == n_cells);
            on_boundary = on_boundary || clamped[k];
        }
        for (int k = 0; k < D; ++k) {
            const double shift = amplitude * dx * (2.0 * rng.uniform01() - 1.0);
            if (!clamped[k]) x[k] += shift;  // boundary sites move tangentially only
        }
        if (on_boundary)
            boundary.push_back(x);
        else
            interior.push_back(x);
    });

    ParticleSet<D> set;
    set.domain = domain;
    set.delta_x = dx;
    set.n_interior = static_cast<int>(interior.size());
    set.positions = std::move(interior);
    set.positions.insert(set.positions.end(), boundary.begin(), boundary.end());
    set.kind.assign(set.positions.size(), ParticleKind::Boundary);
    std::fill(set.kind.begin(), set.kind.begin() + set.n_interior, ParticleKind::Interior);
    detail::check_distinct(set);
    return set;
}

/// CSV export with header x[,y[,z]],is_interior.
template <int D>
void write_particles_csv(const ParticleSet<D>& set, std::ostream& os) {
    static const char* names[] = {"x", "y", "z"};
    for (int k = 0; k < D; ++k) os << names[k] << ",";
    os << "is_interior\n";
    char buf[64];
    for (int i = 0; i < set.total(); ++i) {
        for (int k = 0; k < D; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", set.positions[i][k]);
            os << buf << ",";
        }
        os << (set.is_interior(i) ? 1 : 0) << "\n";
    }
}

template <int D>
void write_particles_csv(const ParticleSet<D>& set, const std::string& path) {
    std::ofstream os(path);
    require(os.good(), "cannot open " + path + " for writing");
    write_particles_csv(set, os);
}

/// CSV import; the domain box is taken as the bounding box of all particles
/// and is_interior=0 rows are flagged as boundary particles.
template <int D>
ParticleSet<D> read_particles_csv(std::istream& is) {
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), "particle CSV: missing header");
    std::vector<Vec<D>> interior, boundary;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        Vec<D> x;
        for (int k = 0; k < D; ++k) {
            require(static_cast<bool>(std::getline(ls, cell, ',')), "particle CSV: short row");
            x[k] = std::stod(cell);
        }
        require(static_cast<bool>(std::getline(ls, cell, ',')), "particle CSV: missing is_interior");
        if (std::stoi(cell) != 0)
            interior.push_back(x);
        else
            boundary.push_back(x);
    }
    require(!interior.empty() || !boundary.empty(), "particle CSV: no particles");

    ParticleSet<D> set;
    set.n_interior = static_cast<int>(interior.size());
    set.positions = std::move(interior);
    set.positions.insert(set.positions.end(), boundary.begin(), boundary.end());
    set.kind.assign(set.positions.size(), ParticleKind::Boundary);
    std::fill(set.kind.begin(), set.kind.begin() + set.n_interior, ParticleKind::Interior);
    for (int k = 0; k < D; ++k) {
        set.domain.lo[k] = set.positions[0][k];
        set.domain.hi[k] = set.positions[0][k];
    }
    for (const auto& x : set.positions)
        for (int k = 0; k < D; ++k) {
            set.domain.lo[k] = std::min(set.domain.lo[k], x[k]);
            set.domain.hi[k] = std::max(set.domain.hi[k], x[k]);
        }
    set.delta_x = std::pow(set.domain.measure(), 1.0 / D) / std::pow(static_cast<double>(set.total()), 1.0 / D);
    detail::check_distinct(set);
    return set;
}

template <int D>
ParticleSet<D> read_particles_csv(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), "cannot open " + path);
    return read_particles_csv<D>(is);
}

}  // namespace vrsph
