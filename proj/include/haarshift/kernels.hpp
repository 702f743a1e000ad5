#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace haarshift {

using RealFn = std::function<double(double)>;

/// An odd convolution kernel given on x > 0 by K, K' and K''.
///
/// `scaled_second`, when present, evaluates x^3 K''(x) directly and must
/// accept x = 0 and x = +inf; it is what keeps m(u) = e^{3u} K''(e^u) finite
/// for |u| in the hundreds. Kernels without it fall back to a log-space
/// product which loses the far tails once K'' underflows.
struct KernelSpec {
    std::string name;
    RealFn k;
    RealFn k1;
    RealFn k2;
    RealFn scaled_second;
    std::optional<double> scaled_second_sup;

    /// Odd extension of K.
    double value(double x) const;
    /// K' (even).
    double first(double x) const;
    /// K'' (odd).
    double second(double x) const;
};

KernelSpec hilbert_kernel();
KernelSpec conjugate_poisson_kernel();
KernelSpec smoothed_truncated_kernel();

std::vector<std::string> builtin_kernel_names();
/// std::nullopt for unknown names.
std::optional<KernelSpec> find_kernel(const std::string& name);

/// m(u) = e^{3u} K''(e^u).
double m_of(const KernelSpec& spec, double u);

struct ValidationReport {
    double max_scaled_second = 0.0;  // max |x^3 K''| over the probes
    double tail_value = 0.0;         // |K| at the largest probe
    double tail_derivative = 0.0;    // |K'| at the largest probe
    double max_first_mismatch = 0.0;   // relative |K' - FD(K)|
    double max_second_mismatch = 0.0;  // relative |K'' - FD(K')|
    bool decay_ok = true;
    bool bounded_ok = true;
    bool derivatives_ok = true;
    std::vector<std::string> warnings;

    bool admissible() const { return decay_ok && bounded_ok && derivatives_ok; }
};

/// Log-spaced probe grid [lo, hi] with `count` points.
std::vector<double> log_probes(double lo, double hi, std::size_t count);

/// Checks the decay and x^3 K'' boundedness hypotheses and the consistency
/// of K, K', K'' under central differences (relative tolerance 1e-5).
/// Violations are reported as flags, never thrown.
ValidationReport validate_kernel(const KernelSpec& spec, std::span<const double> probes);

}  // namespace haarshift
