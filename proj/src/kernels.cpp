#include "haarshift/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace haarshift {

double KernelSpec::value(double x) const { return x < 0.0 ? -k(-x) : k(x); }
double KernelSpec::first(double x) const { return k1(std::abs(x)); }
double KernelSpec::second(double x) const { return x < 0.0 ? -k2(-x) : k2(x); }

KernelSpec hilbert_kernel() {
    KernelSpec s;
    s.name = "hilbert";
    s.k = [](double x) { return 1.0 / x; };
    s.k1 = [](double x) { return -1.0 / (x * x); };
    s.k2 = [](double x) { return 2.0 / (x * x * x); };
    s.scaled_second = [](double) { return 2.0; };
    s.scaled_second_sup = 2.0;
    return s;
}

KernelSpec conjugate_poisson_kernel() {
    KernelSpec s;
    s.name = "conjugate-poisson";
    s.k = [](double x) { return x / (1.0 + x * x); };
    s.k1 = [](double x) {
        const double d = 1.0 + x * x;
        return (1.0 - x * x) / (d * d);
    };
    s.k2 = [](double x) {
        const double d = 1.0 + x * x;
        return 2.0 * x * (x * x - 3.0) / (d * d * d);
    };
    s.scaled_second = [](double x) {
        if (x >= 1.0) {
            const double y = 1.0 / (x * x);
            const double d = 1.0 + y;
            return 2.0 * (1.0 - 3.0 * y) / (d * d * d);
        }
        const double x2 = x * x;
        const double d = 1.0 + x2;
        return 2.0 * x2 * x2 * (x2 - 3.0) / (d * d * d);
    };
    s.scaled_second_sup = 2.0;
    return s;
}

namespace {

// x^3 K''(x) for K(x) = (1 - e^{-x^2}) / x, as a function of t = x^2:
// 2(1 - e^{-t}) - 2t e^{-t} - 4t^2 e^{-t}. The leading terms cancel to
// O(t^2), so small t uses the Taylor series.
double smoothed_scaled(double t) {
    if (t < 1.0) {
        double sum = 0.0;
        double fact_n = 2.0;   // n!
        double fact_n1 = 1.0;  // (n-1)!
        double fact_n2 = 1.0;  // (n-2)!
        double tn = t * t;
        double sign = -1.0;    // (-1)^{n+1} at n = 2
        for (int n = 2; n < 30; ++n) {
            sum += sign * (2.0 / fact_n - 2.0 / fact_n1 + 4.0 / fact_n2) * tn;
            fact_n2 = fact_n1;
            fact_n1 = fact_n;
            fact_n *= (n + 1);
            tn *= t;
            sign = -sign;
        }
        return sum;
    }
    if (t > 745.0) return 2.0;
    const double e = std::exp(-t);
    return -2.0 * std::expm1(-t) - 2.0 * t * e - 4.0 * t * t * e;
}

}  // namespace

KernelSpec smoothed_truncated_kernel() {
    KernelSpec s;
    s.name = "smoothed-truncated";
    s.k = [](double x) { return -std::expm1(-x * x) / x; };
    s.k1 = [](double x) {
        const double t = x * x;
        return 2.0 * std::exp(-t) + std::expm1(-t) / t;
    };
    s.k2 = [](double x) { return smoothed_scaled(x * x) / (x * x * x); };
    s.scaled_second = [](double x) { return std::isinf(x) ? 2.0 : smoothed_scaled(x * x); };
    s.scaled_second_sup = 2.0;
    return s;
}

std::vector<std::string> builtin_kernel_names() { return {"hilbert", "conjugate-poisson", "smoothed-truncated"}; }

std::optional<KernelSpec> find_kernel(const std::string& name) {
    if (name == "hilbert") return hilbert_kernel();
    if (name == "conjugate-poisson") return conjugate_poisson_kernel();
    if (name == "smoothed-truncated") return smoothed_truncated_kernel();
    return std::nullopt;
}

double m_of(const KernelSpec& spec, double u) {
    const double x = std::exp(u);
    if (spec.scaled_second) return spec.scaled_second(x);
    if (x == 0.0 || std::isinf(x)) return std::numeric_limits<double>::quiet_NaN();
    const double k2 = spec.k2(x);
    if (k2 == 0.0) return 0.0;
    return std::copysign(std::exp(3.0 * u + std::log(std::abs(k2))), k2);
}

std::vector<double> log_probes(double lo, double hi, std::size_t count) {
    std::vector<double> out;
    if (count == 0) return out;
    if (count == 1) return {lo};
    const double a = std::log(lo);
    const double b = std::log(hi);
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1)));
    }
    out.back() = hi;
    return out;
}

ValidationReport validate_kernel(const KernelSpec& spec, std::span<const double> probes) {
    ValidationReport rep;
    if (probes.empty()) return rep;
    std::vector<double> xs(probes.begin(), probes.end());
    std::sort(xs.begin(), xs.end());

    std::vector<double> scaled;
    double sup_k = 0.0;
    double sup_k1 = 0.0;
    for (double x : xs) {
        const double m = x * x * x * spec.k2(x);
        scaled.push_back(std::abs(m));
        if (!std::isfinite(m)) rep.bounded_ok = false;
        rep.max_scaled_second = std::max(rep.max_scaled_second, std::abs(m));
        sup_k = std::max(sup_k, std::abs(spec.k(x)));
        sup_k1 = std::max(sup_k1, std::abs(spec.k1(x)));

        const double h = 1e-4 * x;
        const double fd1 = (spec.k(x + h) - spec.k(x - h)) / (2.0 * h);
        const double fd2 = (spec.k1(x + h) - spec.k1(x - h)) / (2.0 * h);
        const double s1 = std::max(std::abs(spec.k1(x)), std::abs(spec.k(x)) / x);
        const double s2 = std::max({std::abs(spec.k2(x)), std::abs(spec.k1(x)) / x, std::abs(spec.k(x)) / (x * x)});
        if (s1 > 0.0) rep.max_first_mismatch = std::max(rep.max_first_mismatch, std::abs(spec.k1(x) - fd1) / s1);
        if (s2 > 0.0) rep.max_second_mismatch = std::max(rep.max_second_mismatch, std::abs(spec.k2(x) - fd2) / s2);
    }

    const double xmax = xs.back();
    rep.tail_value = std::abs(spec.k(xmax));
    rep.tail_derivative = std::abs(spec.k1(xmax));
    if (xs.size() >= 2) {
        if (rep.tail_value > 1e-2 * sup_k || rep.tail_derivative > 1e-2 * sup_k1) {
            rep.decay_ok = false;
            rep.warnings.push_back("K or K' does not decay at the largest probe");
        }
        // growth of |x^3 K''| over the outermost decade at either end
        const std::size_t n = scaled.size();
        std::size_t lo_in = 1;
        while (lo_in + 1 < n && xs[lo_in] < 10.0 * xs[0]) ++lo_in;
        std::size_t hi_in = n - 2;
        while (hi_in > 0 && xs[hi_in] > 0.1 * xs[n - 1]) --hi_in;
        if (scaled[0] > 2.0 * scaled[lo_in] + 1e-12 || scaled[n - 1] > 2.0 * scaled[hi_in] + 1e-12) {
            rep.bounded_ok = false;
        }
    }
    if (!rep.bounded_ok) rep.warnings.push_back("x^3 K''(x) appears unbounded on the probe grid");
    if (rep.max_first_mismatch > 1e-5 || rep.max_second_mismatch > 1e-5) {
        rep.derivatives_ok = false;
        rep.warnings.push_back("K, K', K'' disagree under finite differences");
    }
    return rep;
}

}  // namespace haarshift
