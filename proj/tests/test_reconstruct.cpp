#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "haarshift/reconstruct.hpp"

using namespace haarshift;

namespace {

// int_lo^hi (A + B s) (p - q ln s) ds in closed form.
double linear_times_log(double A, double B, double p, double q, double lo, double hi) {
    auto F = [&](double s) {
        const double ls = std::log(s);
        return p * (A * s + 0.5 * B * s * s) - q * (A * (s * ls - s) + B * (0.5 * s * s * ls - 0.25 * s * s));
    };
    return F(hi) - F(lo);
}

// The profile on [0, 1] by hand: linear between the quarter values.
constexpr double kKnots[5] = {0.0, -1.25, -2.0, 1.75, 0.0};

// (1/x) int_0^1 gamma(x/s) P(s) ds for c(u) = alpha + beta u on [u_min, u_max],
// constant tails, with x chosen so that x/s never drops below e^{u_min}.
double analytic(double alpha, double beta, double u_max, double x) {
    const double s_lo = x * std::exp(-u_max);
    const double tail = alpha + beta * u_max;
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double a = 0.25 * k;
        const double b = a + 0.25;
        const double slope = (kKnots[k + 1] - kKnots[k]) / 0.25;
        const double A = kKnots[k] - slope * a;
        const double lo = std::max(a, s_lo);
        if (b <= s_lo) {
            total += tail * (A * (b - a) + 0.5 * slope * (b * b - a * a));
            continue;
        }
        if (lo > a) total += tail * (A * (lo - a) + 0.5 * slope * (lo * lo - a * a));
        // gamma(x/s) = alpha + beta (ln x - ln s)
        total += linear_times_log(A, slope, alpha + beta * std::log(x), beta, lo, b);
    }
    return total / x;
}

CoefficientTable log_linear_table(double alpha, double beta) {
    auto t = constant_table(0.0, -3.0, 10.0, 0x1.0p-6);
    for (std::size_t i = 0; i < t.samples.size(); ++i) t.samples[i] = alpha + beta * t.node(i);
    t.tail_left = t.samples.front();
    t.tail_right = t.samples.back();
    return t;
}

CoefficientTable hilbert_table() {
    SolverOptions o;
    o.u_min = -10.0;
    o.u_max = 10.0;
    return solve_c(hilbert_kernel(), o);
}

}  // namespace

TEST_CASE("quadrature is exact for gamma linear in log r") {
    const double alpha = -1.3;
    const double beta = 0.4;
    const auto table = log_linear_table(alpha, beta);
    for (double x : {0.06, 0.3, 0.7, 1.0}) {
        const double want = analytic(alpha, beta, table.u_max, x);
        CHECK(std::abs(reconstruct_at(table, x) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("hilbert reconstruction") {
    const auto table = hilbert_table();
    for (double x : log_probes(1e-3, 1e3, 13)) CHECK(std::abs(reconstruct_at(table, x) * x - 1.0) <= 1e-6);
    CHECK_THROWS_AS(reconstruct_at(table, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_at(table, -1.0), std::invalid_argument);
}

TEST_CASE("gamma = 0 reconstructs 0") {
    const auto table = constant_table(0.0);
    CHECK(reconstruct_at(table, 0.5) == 0.0);
    CHECK(reconstruct_at(table, 1e3) == 0.0);
}

TEST_CASE("compare_report") {
    const auto table = hilbert_table();
    const auto probes = log_probes(1e-2, 1e2, 9);
    const auto rep = compare_report(hilbert_kernel(), table, probes);
    CHECK(rep.rows.size() == 9);
    CHECK(rep.max_rel_err <= 1e-6);
    const auto again = compare_report(hilbert_kernel(), table, probes, Execution::serial);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) CHECK(rep.rows[i].k_hat == again.rows[i].k_hat);

    const auto empty = compare_report(hilbert_kernel(), table, std::vector<double>{});
    CHECK(empty.rows.empty());
    CHECK(empty.max_rel_err == 0.0);

    const std::vector<double> neg{-2.0};
    CHECK(compare_report(hilbert_kernel(), table, neg).rows[0].k_hat == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("mc: hilbert at distance 1") {
    const auto table = constant_table(-8.0 / 3.0);
    const auto est = mc_estimate(table, 1.3, 0.3, 1000000, 1e-4, 12345);
    CHECK(est.tail_bound <= 1e-4);
    CHECK(std::abs(est.mean - 1.0) <= 3.0 * est.stderr_ + est.tail_bound);
}

TEST_CASE("mc: scaling and antisymmetry") {
    const auto table = constant_table(-8.0 / 3.0);
    const long M = 200000;
    const auto a = mc_estimate(table, 0.9, 0.2, M, 1e-5, 1);
    const auto b = mc_estimate(table, 1.8, 0.4, M, 1e-5, 2);
    CHECK(std::abs(b.mean - 0.5 * a.mean) <= 3.0 * std::hypot(b.stderr_, 0.5 * a.stderr_) + b.tail_bound + a.tail_bound);
    const auto c = mc_estimate(table, 0.2, 0.9, M, 1e-5, 3);
    CHECK(std::abs(a.mean + c.mean) <= 3.0 * std::hypot(a.stderr_, c.stderr_) + a.tail_bound + c.tail_bound);
}

TEST_CASE("mc: stderr shrinks like 1/sqrt(M)") {
    const auto table = constant_table(-8.0 / 3.0);
    const auto small = mc_estimate(table, 0.5, 0.0, 1000, 1e-4, 77);
    const auto large = mc_estimate(table, 0.5, 0.0, 100000, 1e-4, 78);
    const double ratio = small.stderr_ / large.stderr_;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 12.0);
}

TEST_CASE("mc agrees with quadrature for conjugate-poisson") {
    SolverOptions o;
    o.u_min = -10.0;
    o.u_max = 10.0;
    const auto table = solve_c(conjugate_poisson_kernel(), o);
    for (double d : {0.5, 2.0}) {
        const auto est = mc_estimate(table, d + 0.1, 0.1, 400000, 1e-4, 5);
        CHECK(std::abs(est.mean - reconstruct_at(table, d)) <= 3.0 * est.stderr_ + est.tail_bound);
        const auto neg = mc_estimate(table, 0.1, d + 0.1, 400000, 1e-4, 6);
        CHECK(std::abs(neg.mean + reconstruct_at(table, d)) <= 3.0 * neg.stderr_ + neg.tail_bound);
    }
}

TEST_CASE("mc: determinism, M = 1 and errors") {
    const auto table = constant_table(-8.0 / 3.0);
    const auto a = mc_estimate(table, 1.0, 0.0, 5000, 1e-4, 9, Execution::serial);
    const auto b = mc_estimate(table, 1.0, 0.0, 5000, 1e-4, 9, Execution::parallel);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);

    const auto one = mc_estimate(table, 1.0, 0.0, 1, 1e-4, 9);
    CHECK_FALSE(one.stderr_defined());
    CHECK(std::isnan(one.stderr_));

    CHECK_THROWS_AS(mc_estimate(table, 1.0, 1.0, 10, 1e-4, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_estimate(table, 1.0, 0.0, 0, 1e-4, 1), std::invalid_argument);
}
