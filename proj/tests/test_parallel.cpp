#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "haarshift/haar_operator.hpp"
#include "haarshift/reconstruct.hpp"
#include "haarshift/solver.hpp"

using namespace haarshift;

// Each OpenMP kernel against its serial reference: outputs must be identical.

TEST_CASE("ShiftOperator sweep") {
    const ShiftOperator op(0x1.0p-9);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    std::vector<double> in(200000);
    for (auto& v : in) v = nd(rng);
    std::vector<double> a(in.size());
    std::vector<double> b(in.size());
    op.apply(in, 0.5, -0.25, a, Execution::serial);
    op.apply(in, 0.5, -0.25, b, Execution::parallel);
    CHECK(a == b);
}

TEST_CASE("ShiftOperator matches a direct interpolation formula") {
    const double step = 0.01;
    const ShiftOperator op(step);
    std::vector<double> in(3000);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = std::sin(0.003 * static_cast<double>(i));
    std::vector<double> out(in.size());
    op.apply(in, -1.0, 2.0, out, Execution::serial);
    auto at = [&](double u) {
        const double t = u / step;
        if (t < 0.0) return -1.0;
        if (t > static_cast<double>(in.size() - 1)) return 2.0;
        const auto i = static_cast<std::size_t>(std::floor(t));
        if (i + 1 >= in.size()) return in.back();
        return in[i] + (t - static_cast<double>(i)) * (in[i + 1] - in[i]);
    };
    for (std::size_t j : {0UL, 5UL, 1500UL, 2950UL, 2999UL}) {
        const double u = static_cast<double>(j) * step;
        const double want = at(u + std::log(3.0)) / 99.0 + 36.0 / 99.0 * at(u + std::log(1.5)) +
                            56.0 / 99.0 * at(u - std::log(4.0 / 3.0));
        CHECK(out[j] == doctest::Approx(want).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("min_modulus_scan") {
    CHECK(min_modulus_scan(-500.0, 500.0, 0.01, Execution::serial) ==
          min_modulus_scan(-500.0, 500.0, 0.01, Execution::parallel));
}

TEST_CASE("mc_estimate") {
    const auto table = constant_table(-8.0 / 3.0);
    const auto a = mc_estimate(table, 0.7, 0.0, 20000, 1e-4, 3, Execution::serial);
    const auto b = mc_estimate(table, 0.7, 0.0, 20000, 1e-4, 3, Execution::parallel);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("apply_averaged") {
    const auto table = constant_table(-8.0 / 3.0);
    const std::vector<double> xs{-1.0, 0.25, 2.5};
    const auto a = apply_averaged(table, triangle_test_function(), xs, 20000, 1e-4, 3, Execution::serial);
    const auto b = apply_averaged(table, triangle_test_function(), xs, 20000, 1e-4, 3, Execution::parallel);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(a[i].mean == b[i].mean);
        CHECK(a[i].stderr_ == b[i].stderr_);
    }
}

TEST_CASE("compare_report") {
    const auto table = constant_table(-8.0 / 3.0);
    const auto probes = log_probes(1e-2, 1e2, 17);
    const auto a = compare_report(hilbert_kernel(), table, probes, Execution::serial);
    const auto b = compare_report(hilbert_kernel(), table, probes, Execution::parallel);
    CHECK(a.max_rel_err == b.max_rel_err);
}

TEST_CASE("pairwise_sum") {
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}
