#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "haarshift/dyadic.hpp"
#include "haarshift/kernels.hpp"
#include "haarshift/solver.hpp"

namespace haarshift {

/// K(x) rebuilt from the table: (1/x) * int_0^1 gamma(x/s) P(s) ds with
/// P = h * g_1. Integration runs over the knot intervals of P refined at the
/// table nodes (where gamma has kinks), 8-point Gauss-Legendre with bisection.
double reconstruct_at(const CoefficientTable& table, double x, double rtol = 1e-8);

struct McEstimate {
    double x = 0.0;
    double y = 0.0;
    long samples = 0;
    double mean = 0.0;
    /// NaN when samples < 2.
    double stderr_ = 0.0;
    double tail_bound = 0.0;
    std::uint64_t seed = 0;
    LevelRange levels;

    bool stderr_defined() const { return samples >= 2; }
};

/// ln 2 times the average of shift_kernel_sum over independent grids.
McEstimate mc_estimate(const CoefficientTable& table, double x, double y, long samples, double tail_tol,
                       std::uint64_t seed, Execution exec = Execution::parallel);

struct ReportRow {
    double x;
    double k;
    double k_hat;
    double rel_err;
};

struct CompareReport {
    std::string kernel;
    std::vector<ReportRow> rows;
    double max_rel_err = 0.0;
};

CompareReport compare_report(const KernelSpec& spec, const CoefficientTable& table, std::span<const double> probes,
                             Execution exec = Execution::parallel);

}  // namespace haarshift
