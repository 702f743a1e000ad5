#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "haarshift/dyadic.hpp"
#include "haarshift/kernels.hpp"
#include "haarshift/piecewise.hpp"
#include "haarshift/solver.hpp"

namespace haarshift {

/// Compactly supported test function with rational knots.
using TestFunction = std::variant<StepFunction, PiecewiseLinear>;

double evaluate(const TestFunction& f, double x);
double integrate(const TestFunction& f, double a, double b);
double l1_norm(const TestFunction& f);
/// Jumps of a step function or kinks of a piecewise-linear one.
std::vector<double> singular_points(const TestFunction& f);

/// Indicator of [0, 1).
TestFunction indicator_test_function();
/// Hat on [0, 2] with peak 1 at x = 1.
TestFunction triangle_test_function();

/// <g_I, f> for the g scaled to I.
double haar_pairing(const Interval& interval, const TestFunction& f);
/// <g_I, f> for an explicit step function g_I.
double haar_pairing(const StepFunction& g_interval, const TestFunction& f);

/// Levels that can contribute at x: below, every interval containing x sees
/// f linear (g annihilates affine functions); above, the remainder is
/// bounded by 14 sup|gamma| |f|_1 2^{-N+1} <= tail_tol.
LevelRange operator_levels(const TestFunction& f, double x, double gamma_sup, double tail_tol);

/// sum over admitted I containing x of gamma(|I|) <g_I, f> h_I(x). Only the
/// interval containing x matters at each level.
template <class Gamma>
double apply_shift(const GridSample& s, const Gamma& gamma, const TestFunction& f, double x, const LevelRange& levels,
                   long* touched = nullptr) {
    double sum = 0.0;
    double offset = level_offset(s, levels.n_min);
    double len = s.r * std::ldexp(1.0, levels.n_min);
    for (int n = levels.n_min; n < levels.n_max; ++n) {
        const double left = cell_left(offset, len, x);
        if (touched != nullptr) ++*touched;
        const double pairing = haar_pairing(Interval{left, len}, f);
        if (pairing != 0.0) sum += gamma(len) * pairing * h_value((x - left) / len) / std::sqrt(len);
        offset += len * s.bit(n);
        len *= 2.0;
    }
    return sum;
}

struct OperatorEstimate {
    double x = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0;
    double tail_bound = 0.0;
    LevelRange levels;
};

/// ln 2 times the Monte-Carlo mean of apply_shift at each x.
std::vector<OperatorEstimate> apply_averaged(const CoefficientTable& table, const TestFunction& f,
                                             std::span<const double> xs, long samples, double tail_tol,
                                             std::uint64_t seed, Execution exec = Execution::parallel);

/// Same with fixed levels for every x; throws on an empty range.
OperatorEstimate apply_averaged_at(const CoefficientTable& table, const TestFunction& f, double x,
                                   const LevelRange& levels, long samples, std::uint64_t seed,
                                   Execution exec = Execution::parallel);

struct PvSchedule {
    int k_min = 10;  // eps = 2^-k
    int k_max = 30;
    double rtol = 1e-13;
};

/// p.v. int K(x - t) f(t) dt by symmetric exclusion |x - t| > eps over the
/// schedule, with Richardson extrapolation on consecutive eps pairs.
double direct_pv(const KernelSpec& spec, const TestFunction& f, double x, const PvSchedule& schedule = {});

}  // namespace haarshift
