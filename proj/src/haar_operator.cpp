#include "haarshift/haar_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace haarshift {

double evaluate(const TestFunction& f, double x) {
    return std::visit([x](const auto& fn) { return fn(x); }, f);
}

double integrate(const TestFunction& f, double a, double b) {
    return std::visit([a, b](const auto& fn) { return fn.integrate(a, b); }, f);
}

double l1_norm(const TestFunction& f) {
    return std::visit([](const auto& fn) { return fn.l1_norm(); }, f);
}

std::vector<double> singular_points(const TestFunction& f) {
    std::vector<double> out;
    if (const auto* step = std::get_if<StepFunction>(&f)) {
        const auto bp = step->breakpoints();
        const auto vals = step->values();
        for (std::size_t i = 0; i < bp.size(); ++i) {
            const double before = i == 0 ? 0.0 : vals[i - 1];
            const double after = i < vals.size() ? vals[i] : 0.0;
            if (before != after) out.push_back(bp[i].to_double());
        }
    } else {
        const auto& pl = std::get<PiecewiseLinear>(f);
        const auto knots = pl.knots();
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const double before = i == 0 ? 0.0 : pl.slope(i - 1);
            const double after = i + 1 < knots.size() ? pl.slope(i) : 0.0;
            if (before != after) out.push_back(knots[i].to_double());
        }
    }
    return out;
}

TestFunction indicator_test_function() { return make_indicator(Rational(0), Rational(1)); }

TestFunction triangle_test_function() {
    return PiecewiseLinear({Rational(0), Rational(1), Rational(2)}, {0.0, 1.0, 0.0});
}

double haar_pairing(const Interval& interval, const TestFunction& f) {
    static constexpr double g_quarters[4] = {-1.0, 1.0, 1.0, -1.0};
    const double q = 0.25 * interval.length;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double a = interval.left + i * q;
        const double b = i == 3 ? interval.left + interval.length : a + q;
        sum += g_quarters[i] * integrate(f, a, b);
    }
    return sum / std::sqrt(interval.length);
}

double haar_pairing(const StepFunction& g_interval, const TestFunction& f) {
    const auto bp = g_interval.breakpoints();
    const auto vals = g_interval.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        sum += vals[i] * integrate(f, bp[i].to_double(), bp[i + 1].to_double());
    }
    return sum;
}

LevelRange operator_levels(const TestFunction& f, double x, double gamma_sup, double tail_tol) {
    if (!(tail_tol > 0.0)) throw std::invalid_argument("operator_levels: tail tolerance must be positive");
    const auto pts = singular_points(f);
    if (pts.empty()) return {0, 0};
    double dist = std::numeric_limits<double>::infinity();
    for (double p : pts) dist = std::min(dist, std::abs(x - p));
    if (!(dist > 0.0)) throw std::invalid_argument("operator_levels: x sits on a jump or kink of f");
    LevelRange lv;
    lv.n_min = static_cast<int>(std::floor(std::log2(dist))) - 1;
    const double mass = l1_norm(f);
    int n = lv.n_min + 1;
    while (14.0 * gamma_sup * mass * std::ldexp(1.0, -n + 1) > tail_tol) ++n;
    lv.n_max = n;
    return lv;
}

OperatorEstimate apply_averaged_at(const CoefficientTable& table, const TestFunction& f, double x,
                                   const LevelRange& levels, long samples, std::uint64_t seed, Execution exec) {
    if (levels.empty()) throw std::invalid_argument("apply_averaged: empty level range");
    if (samples < 1) throw std::invalid_argument("apply_averaged: need at least one sample");
    OperatorEstimate est;
    est.x = x;
    est.levels = levels;
    est.tail_bound = tail_bound(levels, table.sup_abs(), l1_norm(f));
    const int i_min = default_bit_floor(levels);
    auto gamma = [&table](double len) { return table.gamma_at(len); };
    std::vector<double> values(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (long i = 0; i < samples; ++i) {
        const GridSample grid = sample_grid(seed, i_min, levels.n_max, static_cast<std::uint64_t>(i));
        values[static_cast<std::size_t>(i)] = apply_shift(grid, gamma, f, x, levels);
    }
    const double avg = pairwise_sum(values) / static_cast<double>(samples);
    est.mean = std::log(2.0) * avg;
    if (samples < 2) {
        est.stderr_ = std::numeric_limits<double>::quiet_NaN();
        return est;
    }
    for (double& v : values) v = (v - avg) * (v - avg);
    est.stderr_ = std::log(2.0) * std::sqrt(pairwise_sum(values) / static_cast<double>(samples - 1) /
                                            static_cast<double>(samples));
    return est;
}

std::vector<OperatorEstimate> apply_averaged(const CoefficientTable& table, const TestFunction& f,
                                             std::span<const double> xs, long samples, double tail_tol,
                                             std::uint64_t seed, Execution exec) {
    if (samples < 1) throw std::invalid_argument("apply_averaged: need at least one sample");
    std::vector<OperatorEstimate> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const LevelRange levels = operator_levels(f, x, table.sup_abs(), tail_tol);
        if (levels.empty()) {
            // f has no jumps or kinks, hence f == 0 and so is every pairing
            out.push_back({x, 0.0, 0.0, 0.0, levels});
            continue;
        }
        out.push_back(apply_averaged_at(table, f, x, levels, samples, seed, exec));
    }
    return out;
}

namespace {

// int_eps^T K(tau) [f(x - tau) - f(x + tau)] dtau, split at the jumps/kinks of f.
double excluded_integral(const KernelSpec& spec, const TestFunction& f, double x, double eps,
                         std::span<const double> cuts_all, double rtol) {
    std::vector<double> cuts{eps};
    for (double c : cuts_all) {
        if (c > eps) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto integrand = [&](double tau) { return spec.k(tau) * (evaluate(f, x - tau) - evaluate(f, x + tau)); };
    std::vector<double> parts;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        parts.push_back(adaptive_gauss8(integrand, cuts[i], cuts[i + 1], rtol, 1e-16 * (cuts[i + 1] - cuts[i]), 40));
    }
    return pairwise_sum(parts);
}

}  // namespace

double direct_pv(const KernelSpec& spec, const TestFunction& f, double x, const PvSchedule& schedule) {
    if (schedule.k_max <= schedule.k_min + 1) throw std::invalid_argument("direct_pv: schedule needs three or more eps");
    std::vector<double> cuts;
    for (double p : singular_points(f)) cuts.push_back(std::abs(x - p));
    if (cuts.empty()) return 0.0;

    std::vector<double> extrapolated;
    double coarse = excluded_integral(spec, f, x, std::ldexp(1.0, -schedule.k_min), cuts, schedule.rtol);
    for (int k = schedule.k_min + 1; k <= schedule.k_max; ++k) {
        const double fine = excluded_integral(spec, f, x, std::ldexp(1.0, -k), cuts, schedule.rtol);
        extrapolated.push_back(2.0 * fine - coarse);
        coarse = fine;
    }
    const std::size_t n = extrapolated.size();
    const double last = std::abs(extrapolated[n - 1] - extrapolated[n - 2]);
    const double scale = std::max(1.0, std::abs(extrapolated[n - 1]));
    if (last > 1e-9 * scale) {
        const double before = n >= 3 ? std::abs(extrapolated[n - 2] - extrapolated[n - 3]) : last;
        if (!(last < before)) throw std::runtime_error("direct_pv: principal value does not converge on the schedule");
    }
    return extrapolated[n - 1];
}

}  // namespace haarshift
