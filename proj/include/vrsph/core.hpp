#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace vrsph {

/// Fixed-size spatial vector for dimensions 1..3.
template <int D>
struct Vec {
    static_assert(D >= 1 && D <= 3, "supported dimensions are 1, 2, 3");

    std::array<double, D> c{};

    double& operator[](int k) { return c[static_cast<std::size_t>(k)]; }
    double operator[](int k) const { return c[static_cast<std::size_t>(k)]; }

    Vec& operator+=(const Vec& o) {
        for (int k = 0; k < D; ++k) c[k] += o.c[k];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int k = 0; k < D; ++k) c[k] -= o.c[k];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int k = 0; k < D; ++k) c[k] *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }
    friend bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }

    double dot(const Vec& o) const {
        double s = 0.0;
        for (int k = 0; k < D; ++k) s += c[k] * o.c[k];
        return s;
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

using Vec1 = Vec<1>;
using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

/// Axis-aligned box [lo, hi].
template <int D>
struct Box {
    Vec<D> lo{};
    Vec<D> hi{};

    double side(int k) const { return hi[k] - lo[k]; }
    double measure() const {
        double m = 1.0;
        for (int k = 0; k < D; ++k) m *= side(k);
        return m;
    }
    bool contains(const Vec<D>& x, double tol = 0.0) const {
        for (int k = 0; k < D; ++k)
            if (x[k] < lo[k] - tol || x[k] > hi[k] + tol) return false;
        return true;
    }
    static Box unit() {
        Box b;
        for (int k = 0; k < D; ++k) {
            b.lo[k] = 0.0;
            b.hi[k] = 1.0;
        }
        return b;
    }
    static Box symmetric() {
        Box b;
        for (int k = 0; k < D; ++k) {
            b.lo[k] = -1.0;
            b.hi[k] = 1.0;
        }
        return b;
    }
};

/// Multi-index alpha = (a_1, ..., a_D); |alpha| = sum a_k.
template <int D>
struct MultiIndex {
    std::array<int, D> a{};

    int order() const {
        int s = 0;
        for (int k = 0; k < D; ++k) s += a[k];
        return s;
    }
    bool operator==(const MultiIndex&) const = default;

    /// x^alpha = prod x_k^{a_k}
    double monomial(const Vec<D>& x) const {
        double p = 1.0;
        for (int k = 0; k < D; ++k)
            for (int e = 0; e < a[k]; ++e) p *= x[k];
        return p;
    }
    double factorial() const {
        double f = 1.0;
        for (int k = 0; k < D; ++k)
            for (int e = 2; e <= a[k]; ++e) f *= e;
        return f;
    }
    static MultiIndex unit(int k) {
        MultiIndex m;
        m.a[k] = 1;
        return m;
    }
};

/// All multi-indices with |alpha| = 1, in coordinate order.
template <int D>
std::vector<MultiIndex<D>> first_order_indices() {
    std::vector<MultiIndex<D>> out;
    for (int k = 0; k < D; ++k) out.push_back(MultiIndex<D>::unit(k));
    return out;
}

/// All multi-indices with |alpha| = 2, lexicographic: (2,0,..), (1,1,..), ...
template <int D>
std::vector<MultiIndex<D>> second_order_indices() {
    std::vector<MultiIndex<D>> out;
    for (int k = 0; k < D; ++k)
        for (int l = k; l < D; ++l) {
            MultiIndex<D> m;
            m.a[k] += 1;
            m.a[l] += 1;
            out.push_back(m);
        }
    return out;
}

/// Deterministic uniform generator; identical streams across platforms for a
/// fixed seed (does not rely on std::uniform_real_distribution).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    /// Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  private:
    std::uint64_t state_;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

/// Static-chunked parallel loop; results must be written to disjoint slots so
/// the output is identical for any thread count.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n < 2) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int nt = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            const int lo = static_cast<int>(static_cast<long long>(n) * t / nt);
            const int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / nt);
            try {
                for (int i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace vrsph
