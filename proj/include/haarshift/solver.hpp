#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "haarshift/kernels.hpp"
#include "haarshift/numeric.hpp"

namespace haarshift {

// Coefficients of the four-term recursion
//   m(u) = 1/8 c(u + ln 4) + 9/2 c(u + ln 2) - 99/8 c(u + ln 4/3) + 7 c(u).
namespace recursion {
inline constexpr double coef_ln4 = 1.0 / 8.0;
inline constexpr double coef_ln2 = 9.0 / 2.0;
inline constexpr double coef_ln43 = -99.0 / 8.0;
inline constexpr double coef_0 = 7.0;
/// a(0): sum of the four coefficients.
inline constexpr double symbol_at_zero = -3.0 / 4.0;
/// Sup-norm of the fixed-point map, (8/99)(1/8 + 9/2 + 7).
inline constexpr double contraction = 31.0 / 33.0;
/// (8/99) / (1 - 31/33): sup|c| <= norm_constant * sup|m|.
inline constexpr double norm_constant = 4.0 / 3.0;

// Fixed-point form with the dominant term isolated:
//   c(y) = 1/99 c(y + ln 3) + 36/99 c(y + ln 3/2) + 56/99 c(y - ln 4/3) - 8/99 m(y - ln 4/3)
inline constexpr double weight_ln3 = 1.0 / 99.0;
inline constexpr double weight_ln32 = 36.0 / 99.0;
inline constexpr double weight_ln43 = 56.0 / 99.0;
inline constexpr double weight_m = -8.0 / 99.0;

extern const double ln2, ln3, ln4, ln32, ln43;
}  // namespace recursion

/// Sampled solution c(u) = gamma(e^u) on a uniform log-axis grid.
struct CoefficientTable {
    double u_min = 0.0;
    double u_max = 0.0;
    double step = 1.0;
    std::vector<double> samples;
    double tail_left = 0.0;
    double tail_right = 0.0;
    double residual_sup = 0.0;
    int iterations = 0;
    std::string kernel_name;
    /// Largest ratio of successive sup-changes seen during the iteration.
    double max_contraction_ratio = 0.0;
    /// sup |m| over the padded solver grid.
    double m_sup = 0.0;

    /// c(u): linear interpolation inside the window, constant tails outside.
    double c_at(double u) const;
    /// gamma(r) = c(ln r); throws std::invalid_argument for r <= 0.
    double gamma_at(double r) const;
    double node(std::size_t i) const { return u_min + static_cast<double>(i) * step; }
    double sup_abs() const;
};

/// Table with c identically equal to `value` (gamma constant).
CoefficientTable constant_table(double value, double u_min = -16.0, double u_max = 16.0, double step = 1.0);

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double last_change, int iterations)
        : std::runtime_error(what), last_change_(last_change), iterations_(iterations) {}
    double last_change() const { return last_change_; }
    int iterations() const { return iterations_; }

private:
    double last_change_;
    int iterations_;
};

enum class InitialGuess {
    local_constant,  // c0(u) = m(u) / a(0)
    zero,
};

struct SolverOptions {
    double u_min = -16.0;
    double u_max = 16.0;
    double step = 0x1.0p-9;
    double tol = 1e-8;
    int max_iter = 600;
    InitialGuess initial = InitialGuess::local_constant;
    /// When positive, apply exactly this many fixed-point updates and skip
    /// the convergence test; the result is then a Neumann partial sum.
    int fixed_sweeps = 0;
    Execution exec = Execution::parallel;
};

/// The positive part of the fixed-point map on a uniform grid,
///   (B d)(y) = 1/99 d(y + ln 3) + 36/99 d(y + ln 3/2) + 56/99 d(y - ln 4/3),
/// with linear interpolation and constant extension beyond the grid ends.
class ShiftOperator {
public:
    explicit ShiftOperator(double step);

    void apply(std::span<const double> in, double tail_left, double tail_right, std::span<double> out,
               Execution exec) const;

private:
    struct Tap {
        long offset;  // floor of the shift in grid units
        double frac;
        double weight;
    };
    Tap taps_[3];
};

/// Solves the recursion for bounded c by contraction iteration on a grid
/// padded by max_iter * ln 3 (right) and max_iter * ln 4/3 (left).
CoefficientTable solve_c(const RealFn& m, const SolverOptions& opts, const std::string& name = "custom");
CoefficientTable solve_c(const KernelSpec& spec, const SolverOptions& opts);

/// sup over probes of |m(x) - [1/8 c(x+ln4) + 9/2 c(x+ln2) - 99/8 c(x+ln4/3) + 7 c(x)]|.
double residual(const CoefficientTable& table, const RealFn& m, std::span<const double> probes);
double residual(const CoefficientTable& table, const KernelSpec& spec, std::span<const double> probes);

/// Probes x = u_j - ln(4/3) for window nodes u_j, kept where all four shifted
/// arguments stay inside the window. There the dominant term hits a node, so
/// the residual measures only the fixed-point defect.
std::vector<double> aligned_residual_probes(const CoefficientTable& table);

/// a(w) = 1/8 e^{iw ln4} + 9/2 e^{iw ln2} - 99/8 e^{iw ln4/3} + 7.
std::complex<double> a_of_omega(double omega);

/// min |a(w)| over w = lo + i * step, i = 0 .. floor((hi - lo) / step).
double min_modulus_scan(double lo, double hi, double step, Execution exec = Execution::parallel);

}  // namespace haarshift
