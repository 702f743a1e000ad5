#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>

namespace haarshift {

enum class Execution { serial, parallel };

/// Pairwise (cascade) summation; the result depends only on the input order,
/// not on how the values were produced.
double pairwise_sum(std::span<const double> values);

/// Number of OpenMP threads used by parallel kernels (1 without OpenMP).
int max_threads();
void set_threads(int n);

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature

struct GaussLegendre8 {
    std::array<double, 8> nodes;    // on [-1, 1]
    std::array<double, 8> weights;
};

const GaussLegendre8& gauss_legendre8();

/// 8-point rule on [a, b].
template <class F>
double gauss8(F&& f, double a, double b) {
    const auto& rule = gauss_legendre8();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < 8; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

namespace detail {
template <class F>
double adaptive_gauss8(F& f, double a, double b, double whole, double rtol, double atol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss8(f, a, mid);
    const double right = gauss8(f, mid, b);
    const double refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) <= std::max(rtol * std::abs(refined), atol)) return refined;
    return adaptive_gauss8(f, a, mid, left, rtol, 0.5 * atol, depth - 1) +
           adaptive_gauss8(f, mid, b, right, rtol, 0.5 * atol, depth - 1);
}
}  // namespace detail

/// Composite 8-point Gauss-Legendre with recursive bisection until the
/// estimate changes by less than max(rtol * |estimate|, atol).
template <class F>
double adaptive_gauss8(F&& f, double a, double b, double rtol, double atol = 0.0, int max_depth = 40) {
    if (!(a < b)) return 0.0;
    const double whole = gauss8(f, a, b);
    return detail::adaptive_gauss8(f, a, b, whole, rtol, atol, max_depth);
}

// ---------------------------------------------------------------------------
// Counter-based random numbers

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream of 64-bit words addressed by (seed, stream index, counter). Streams
/// with distinct indices are independent, which makes Monte-Carlo samples
/// reproducible regardless of how they are distributed over threads.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * (++counter_)); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace haarshift
