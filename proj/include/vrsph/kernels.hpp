#pragma once

#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vrsph/core.hpp"

namespace vrsph {

enum class KernelFamily { CubicSpline };

/// Smoothing kernel W(x, h) = sigma_d h^{-d} What(R), R = ||x||/h, with
/// compact support R < 1. Only the cubic spline ships; the family tag keeps
/// the door open for Wendland-type kernels.
template <int D>
class Kernel {
  public:
    Kernel(KernelFamily family, double h) : family_(family), h_(h) {
        require(h > 0.0, "kernel: smoothing length must be positive");
    }
    explicit Kernel(double h) : Kernel(KernelFamily::CubicSpline, h) {}

    KernelFamily family() const { return family_; }
    double h() const { return h_; }

    /// Normalization sigma_d: 4/3 (1D), 40/(7 pi) (2D), 8/pi (3D).
    static constexpr double sigma() {
        if constexpr (D == 1) return 4.0 / 3.0;
        if constexpr (D == 2) return 40.0 / (7.0 * std::numbers::pi);
        return 8.0 / std::numbers::pi;
    }

    /// Dimensionless profile What(R).
    static double shape(double R) {
        if (R < 0.5) return 1.0 + 6.0 * R * R * (R - 1.0);
        if (R < 1.0) {
            const double t = 1.0 - R;
            return 2.0 * t * t * t;
        }
        return 0.0;
    }

    /// d What / dR; <= 0 on [0, 1] (decay condition).
    static double dshape(double R) {
        if (R < 0.5) return 6.0 * R * (3.0 * R - 2.0);
        if (R < 1.0) {
            const double t = 1.0 - R;
            return -6.0 * t * t;
        }
        return 0.0;
    }

    double value_from_distance(double r) const {
        return sigma() * std::pow(h_, -D) * shape(r / h_);
    }

    double value(const Vec<D>& displacement) const {
        return value_from_distance(displacement.norm());
    }

    /// Radial gradient factor g(r) with grad_i W_ij = g(r) * x_ij; g <= 0.
    /// The quantity x_ij . grad_i W_ij / ||x_ij||^2 equals g(r), and the
    /// second-derivative weight Delta_i W_ij = -2 g(r).
    double grad_factor(double r) const {
        if (r <= 0.0 || r >= h_) return 0.0;
        const double R = r / h_;
        return sigma() * std::pow(h_, -(D + 1)) * dshape(R) / r;
    }

    /// grad_i W(x_i - x_j); the zero vector at coincident points (the
    /// analytic limit for the cubic spline).
    Vec<D> gradient(const Vec<D>& x_ij) const {
        return grad_factor(x_ij.norm()) * x_ij;
    }

  private:
    KernelFamily family_;
    double h_;
};

struct KernelCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;   // measured quantity (error, bound constant, ...)
    std::string detail;   // offending sample on failure
};

struct KernelReport {
    std::vector<KernelCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

/// Tensor-product trapezoid quadrature of W over its support cube.
template <int D>
double kernel_mass_quadrature(const Kernel<D>& kernel, int resolution) {
    const double h = kernel.h();
    const double step = 2.0 * h / resolution;
    double sum = 0.0;
    std::array<int, D> idx{};
    const auto weight1d = [&](int i) { return (i == 0 || i == resolution) ? 0.5 : 1.0; };
    bool done = false;
    while (!done) {
        Vec<D> x;
        double w = 1.0;
        for (int k = 0; k < D; ++k) {
            x[k] = -h + idx[k] * step;
            w *= weight1d(idx[k]);
        }
        sum += w * kernel.value(x);
        int k = 0;
        for (; k < D; ++k) {
            if (++idx[k] <= resolution) break;
            idx[k] = 0;
        }
        done = (k == D);
    }
    return sum * std::pow(step, D);
}

}  // namespace detail

/// Numeric verification of the kernel conditions: normalization, symmetry,
/// compact support, decay monotonicity, and the sup bound on the gradient.
template <int D>
KernelReport verify_kernel_properties(const Kernel<D>& kernel, int quadrature_resolution) {
    require(quadrature_resolution >= 8, "verify_kernel_properties: resolution too small");
    KernelReport report;
    const double h = kernel.h();

    {
        KernelCheck c{"normalization"};
        c.value = std::abs(detail::kernel_mass_quadrature(kernel, quadrature_resolution) - 1.0);
        c.passed = c.value <= 1e-6;
        if (!c.passed) {
            std::ostringstream os;
            os << "|int W - 1| = " << c.value;
            c.detail = os.str();
        }
        report.checks.push_back(c);
    }
    {
        KernelCheck c{"symmetry"};
        c.passed = true;
        Rng rng(12345);
        for (int s = 0; s < 1000 && c.passed; ++s) {
            Vec<D> x;
            for (int k = 0; k < D; ++k) x[k] = rng.uniform(-h, h);
            const double err = std::abs(kernel.value(x) - kernel.value(-x));
            if (err > 1e-15 * kernel.value_from_distance(0.0)) {
                c.passed = false;
                c.value = err;
                c.detail = "W(x) != W(-x) at random sample";
            }
        }
        report.checks.push_back(c);
    }
    {
        KernelCheck c{"compact_support"};
        c.passed = true;
        for (int s = 0; s <= 100 && c.passed; ++s) {
            const double r = h * (1.0 + 0.05 * s);
            if (kernel.value_from_distance(r) != 0.0) {
                c.passed = false;
                c.value = kernel.value_from_distance(r);
                c.detail = "W > 0 at r = " + std::to_string(r);
            }
        }
        report.checks.push_back(c);
    }
    {
        KernelCheck c{"decay"};
        c.passed = true;
        double prev = kernel.value_from_distance(0.0);
        for (int s = 1; s <= 1000; ++s) {
            const double cur = kernel.value_from_distance(h * s / 1000.0);
            if (cur > prev + 1e-15 * prev) {
                c.passed = false;
                c.value = cur - prev;
                c.detail = "profile increases at R = " + std::to_string(s / 1000.0);
                break;
            }
            prev = cur;
        }
        report.checks.push_back(c);
    }
    {
        // ||grad W||_inf <= C h^{-d-1}; report the measured C.
        KernelCheck c{"gradient_bound"};
        double cmax = 0.0;
        for (int s = 1; s <= 2000; ++s) {
            const double r = h * s / 2000.0;
            Vec<D> x{};
            x[0] = r;
            double gmax = 0.0;
            const Vec<D> g = kernel.gradient(x);
            for (int k = 0; k < D; ++k) gmax = std::max(gmax, std::abs(g[k]));
            cmax = std::max(cmax, gmax * std::pow(h, D + 1));
        }
        c.value = cmax;
        c.passed = cmax > 0.0 && cmax < 100.0;
        report.checks.push_back(c);
    }
    return report;
}

}  // namespace vrsph
