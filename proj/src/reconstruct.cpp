#include "haarshift/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "haarshift/piecewise.hpp"

namespace haarshift {

double reconstruct_at(const CoefficientTable& table, double x, double rtol) {
    if (!(x > 0.0)) throw std::invalid_argument("reconstruct_at: x must be positive (use oddness for x < 0)");
    const PiecewiseLinear& profile = haar_profile();
    if (table.samples.empty()) return 0.0;

    const double log_x = std::log(x);
    // s < s_lo  <=>  x/s > e^{u_max}; s > s_hi  <=>  x/s < e^{u_min}
    const double s_lo = std::min(1.0, x * std::exp(-table.u_max));
    const double s_hi = std::min(1.0, x * std::exp(-table.u_min));

    std::vector<double> parts;
    parts.push_back(table.tail_right * profile.integrate(0.0, s_lo));
    if (s_hi < 1.0) parts.push_back(table.tail_left * profile.integrate(s_hi, 1.0));

    if (s_lo < s_hi) {
        std::vector<double> cuts{s_lo, s_hi};
        for (double q : {0.25, 0.5, 0.75}) {
            if (q > s_lo && q < s_hi) cuts.push_back(q);
        }
        // kinks of gamma(x/s) at s_j = x e^{-u_j}
        const double j_lo = (log_x - std::log(s_hi) - table.u_min) / table.step;
        const double j_hi = (log_x - std::log(s_lo) - table.u_min) / table.step;
        const auto first = static_cast<long>(std::max(0.0, std::ceil(j_lo)));
        const auto last = static_cast<long>(std::min(static_cast<double>(table.samples.size() - 1), std::floor(j_hi)));
        for (long j = first; j <= last; ++j) {
            const double s = x * std::exp(-table.node(static_cast<std::size_t>(j)));
            if (s > s_lo && s < s_hi) cuts.push_back(s);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        const double scale = 2.0 * std::max(table.sup_abs(), 1e-300);
        auto integrand = [&](double s) { return table.c_at(log_x - std::log(s)) * profile(s); };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i];
            const double b = cuts[i + 1];
            const double atol = 1e-3 * rtol * (b - a) * scale;
            parts.push_back(adaptive_gauss8(integrand, a, b, rtol, atol, 20));
        }
    }
    return pairwise_sum(parts) / x;
}

McEstimate mc_estimate(const CoefficientTable& table, double x, double y, long samples, double tail_tol,
                       std::uint64_t seed, Execution exec) {
    if (x == y) throw std::invalid_argument("mc_estimate: x == y lies on the kernel diagonal");
    if (samples < 1) throw std::invalid_argument("mc_estimate: need at least one sample");
    McEstimate est;
    est.x = x;
    est.y = y;
    est.samples = samples;
    est.seed = seed;
    const double gamma_sup = table.sup_abs();
    est.levels = pair_levels(std::abs(x - y), gamma_sup, tail_tol);
    est.tail_bound = tail_bound(est.levels, gamma_sup);
    const int i_min = default_bit_floor(est.levels);

    auto gamma = [&table](double len) { return table.gamma_at(len); };
    std::vector<double> values(static_cast<std::size_t>(samples));
    const LevelRange levels = est.levels;
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (long i = 0; i < samples; ++i) {
        const GridSample grid = sample_grid(seed, i_min, levels.n_max, static_cast<std::uint64_t>(i));
        values[static_cast<std::size_t>(i)] = shift_kernel_sum(grid, gamma, x, y, levels);
    }

    const double avg = pairwise_sum(values) / static_cast<double>(samples);
    est.mean = std::log(2.0) * avg;
    if (samples < 2) {
        est.stderr_ = std::numeric_limits<double>::quiet_NaN();
        return est;
    }
    for (double& v : values) v = (v - avg) * (v - avg);
    const double var = pairwise_sum(values) / static_cast<double>(samples - 1);
    est.stderr_ = std::log(2.0) * std::sqrt(var / static_cast<double>(samples));
    return est;
}

CompareReport compare_report(const KernelSpec& spec, const CoefficientTable& table, std::span<const double> probes,
                             Execution exec) {
    CompareReport rep;
    rep.kernel = spec.name;
    rep.rows.resize(probes.size());
    const long n = static_cast<long>(probes.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (long i = 0; i < n; ++i) {
        const double x = probes[static_cast<std::size_t>(i)];
        const double k = spec.value(x);
        const double k_hat = x > 0.0 ? reconstruct_at(table, x) : -reconstruct_at(table, -x);
        const double err = std::abs(k_hat - k);
        rep.rows[static_cast<std::size_t>(i)] = {x, k, k_hat, k != 0.0 ? err / std::abs(k) : err};
    }
    for (const auto& row : rep.rows) rep.max_rel_err = std::max(rep.max_rel_err, row.rel_err);
    return rep;
}

}  // namespace haarshift
