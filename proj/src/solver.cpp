#include "haarshift/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace haarshift {

namespace recursion {
const double ln2 = std::log(2.0);
const double ln3 = std::log(3.0);
const double ln4 = std::log(4.0);
const double ln32 = std::log(1.5);
const double ln43 = std::log(4.0 / 3.0);
}  // namespace recursion

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Limit of m far beyond `edge` in direction `dir`, if m has settled there.
std::optional<double> detect_limit(const RealFn& m, double edge, double dir) {
    const double a = m(edge + dir * 20.0);
    const double b = m(edge + dir * 40.0);
    const double c = m(edge + dir * 80.0);
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) return std::nullopt;
    const double scale = std::max(1.0, std::abs(c));
    if (std::abs(a - b) > 1e-12 * scale || std::abs(b - c) > 1e-12 * scale) return std::nullopt;
    return c;
}

double sup_abs(std::span<const double> v, Execution exec) {
    double s = 0.0;
    const std::size_t n = v.size();
#pragma omp parallel for reduction(max : s) schedule(static) if (exec == Execution::parallel)
    for (std::size_t i = 0; i < n; ++i) s = std::max(s, std::abs(v[i]));
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoefficientTable

double CoefficientTable::c_at(double u) const {
    if (samples.empty()) return 0.0;
    if (u < u_min) return tail_left;
    if (u > u_max) return tail_right;
    if (samples.size() == 1) return samples[0];
    const double t = (u - u_min) / step;
    auto i = static_cast<std::size_t>(t);
    if (i >= samples.size() - 1) i = samples.size() - 2;
    const double theta = t - static_cast<double>(i);
    return samples[i] + theta * (samples[i + 1] - samples[i]);
}

double CoefficientTable::gamma_at(double r) const {
    if (!(r > 0.0)) throw std::invalid_argument("gamma_at: r must be positive");
    return c_at(std::log(r));
}

double CoefficientTable::sup_abs() const {
    double s = std::max(std::abs(tail_left), std::abs(tail_right));
    for (double v : samples) s = std::max(s, std::abs(v));
    return s;
}

CoefficientTable constant_table(double value, double u_min, double u_max, double step) {
    CoefficientTable t;
    t.u_min = u_min;
    t.step = step;
    const auto n = static_cast<std::size_t>(std::llround((u_max - u_min) / step)) + 1;
    t.u_max = u_min + static_cast<double>(n - 1) * step;
    t.samples.assign(n, value);
    t.tail_left = value;
    t.tail_right = value;
    t.kernel_name = "constant";
    return t;
}

// ---------------------------------------------------------------------------
// ShiftOperator

ShiftOperator::ShiftOperator(double step) {
    auto make = [step](double shift, double weight) {
        const double pos = shift / step;
        const double fl = std::floor(pos);
        return Tap{static_cast<long>(fl), pos - fl, weight};
    };
    taps_[0] = make(recursion::ln3, recursion::weight_ln3);
    taps_[1] = make(recursion::ln32, recursion::weight_ln32);
    taps_[2] = make(-recursion::ln43, recursion::weight_ln43);
}

void ShiftOperator::apply(std::span<const double> in, double tail_left, double tail_right, std::span<double> out,
                          Execution exec) const {
    const long n = static_cast<long>(in.size());
    const double* src = in.data();
    double* dst = out.data();
    const Tap t0 = taps_[0];
    const Tap t1 = taps_[1];
    const Tap t2 = taps_[2];
    auto at = [=](long i) { return i < 0 ? tail_left : (i >= n ? tail_right : src[i]); };
    auto tap = [&](const Tap& t, long j) {
        const long i = j + t.offset;
        return t.weight * ((1.0 - t.frac) * at(i) + t.frac * at(i + 1));
    };
    // interior range where every tap index is in bounds
    const long lo = std::max(0L, -t2.offset);
    const long hi = std::max(lo, n - 1 - std::max(t0.offset, t1.offset));
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (long j = 0; j < n; ++j) {
        if (j >= lo && j < hi) {
            const double* a = src + j + t0.offset;
            const double* b = src + j + t1.offset;
            const double* c = src + j + t2.offset;
            dst[j] = t0.weight * ((1.0 - t0.frac) * a[0] + t0.frac * a[1]) +
                     t1.weight * ((1.0 - t1.frac) * b[0] + t1.frac * b[1]) +
                     t2.weight * ((1.0 - t2.frac) * c[0] + t2.frac * c[1]);
        } else {
            dst[j] = tap(t0, j) + tap(t1, j) + tap(t2, j);
        }
    }
}

// ---------------------------------------------------------------------------
// solve_c

CoefficientTable solve_c(const RealFn& m, const SolverOptions& opts, const std::string& name) {
    if (!(opts.step > 0.0)) throw std::invalid_argument("solve_c: step must be positive");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("solve_c: tol must be positive");
    if (!(opts.u_max > opts.u_min)) throw std::invalid_argument("solve_c: empty window");
    if (opts.max_iter < 1 && opts.fixed_sweeps < 1) throw std::invalid_argument("solve_c: max_iter must be >= 1");

    const double q = recursion::contraction;
    const double step = opts.step;
    const auto window = static_cast<std::size_t>(std::llround((opts.u_max - opts.u_min) / step)) + 1;
    const int reach = std::max(opts.max_iter, opts.fixed_sweeps);
    const auto pad_left = static_cast<std::size_t>(std::ceil(reach * recursion::ln43 / step));
    const auto pad_right = static_cast<std::size_t>(std::ceil(reach * recursion::ln3 / step));
    const std::size_t n = pad_left + window + pad_right;
    const double u0 = opts.u_min - static_cast<double>(pad_left) * step;
    const double u_end = u0 + static_cast<double>(n - 1) * step;
    auto node = [&](std::size_t j) { return u0 + static_cast<double>(j) * step; };

    // forcing term of the fixed-point map, evaluated exactly at the nodes
    std::vector<double> forcing(n);
    std::vector<double> c(n);
    double m_sup = 0.0;
    bool finite = true;
    for (std::size_t j = 0; j < n; ++j) {
        const double mv = m(node(j) - recursion::ln43);
        finite = finite && std::isfinite(mv);
        m_sup = std::max(m_sup, std::abs(mv));
        forcing[j] = recursion::weight_m * mv;
        if (opts.initial == InitialGuess::local_constant) {
            const double m0 = m(node(j));
            finite = finite && std::isfinite(m0);
            c[j] = m0 / recursion::symbol_at_zero;
        } else {
            c[j] = 0.0;
        }
    }
    if (!finite) throw SolverError("m is unbounded or undefined on the padded solver grid", kNaN, 0);

    // constant tails: fixed point of the constant recursion where m settles, clamping otherwise
    const auto lim_left = detect_limit(m, u0 - recursion::ln43, -1.0);
    const auto lim_right = detect_limit(m, u_end, +1.0);
    const std::optional<double> fixed_left =
        lim_left ? std::optional<double>(*lim_left / recursion::symbol_at_zero) : std::nullopt;
    const std::optional<double> fixed_right =
        lim_right ? std::optional<double>(*lim_right / recursion::symbol_at_zero) : std::nullopt;

    const ShiftOperator op(step);
    std::vector<double> d(n);
    std::vector<double> next(n);

    // d1 = T c0 - c0
    op.apply(c, fixed_left.value_or(c.front()), fixed_right.value_or(c.back()), next, opts.exec);
    for (std::size_t j = 0; j < n; ++j) d[j] = next[j] + forcing[j] - c[j];

    const double stop = opts.tol * (1.0 - q);
    const int limit = opts.fixed_sweeps > 0 ? opts.fixed_sweeps : opts.max_iter;
    double prev_change = 0.0;
    double change = 0.0;
    double max_ratio = 0.0;
    int iter = 0;
    bool converged = false;
    while (iter < limit) {
        change = sup_abs(d, opts.exec);
        for (std::size_t j = 0; j < n; ++j) c[j] += d[j];
        ++iter;
        if (prev_change > 0.0 && change > 0.0) max_ratio = std::max(max_ratio, change / prev_change);
        prev_change = change;
        if (opts.fixed_sweeps <= 0 && change < stop) {
            converged = true;
            break;
        }
        if (iter == limit) break;
        // T c_{k+1} - c_{k+1} = B d_k since T is affine with linear part B
        op.apply(d, fixed_left ? 0.0 : d.front(), fixed_right ? 0.0 : d.back(), next, opts.exec);
        d.swap(next);
    }
    if (opts.fixed_sweeps <= 0 && !converged) {
        throw SolverError("fixed-point iteration did not converge within max_iter (last sup-change " +
                              std::to_string(change) + ")",
                          change, iter);
    }

    CoefficientTable table;
    table.u_min = opts.u_min;
    table.step = step;
    table.u_max = opts.u_min + static_cast<double>(window - 1) * step;
    table.samples.assign(c.begin() + static_cast<long>(pad_left), c.begin() + static_cast<long>(pad_left + window));
    table.tail_left = fixed_left.value_or(table.samples.front());
    table.tail_right = fixed_right.value_or(table.samples.back());
    table.iterations = iter;
    table.kernel_name = name;
    table.max_contraction_ratio = max_ratio;
    table.m_sup = m_sup;
    const auto probes = aligned_residual_probes(table);
    table.residual_sup = residual(table, m, probes);
    return table;
}

CoefficientTable solve_c(const KernelSpec& spec, const SolverOptions& opts) {
    return solve_c([&spec](double u) { return m_of(spec, u); }, opts, spec.name);
}

// ---------------------------------------------------------------------------
// residual

double residual(const CoefficientTable& table, const RealFn& m, std::span<const double> probes) {
    double sup = 0.0;
    for (double x : probes) {
        const double rhs = recursion::coef_ln4 * table.c_at(x + recursion::ln4) +
                           recursion::coef_ln2 * table.c_at(x + recursion::ln2) +
                           recursion::coef_ln43 * table.c_at(x + recursion::ln43) + recursion::coef_0 * table.c_at(x);
        sup = std::max(sup, std::abs(m(x) - rhs));
    }
    return sup;
}

double residual(const CoefficientTable& table, const KernelSpec& spec, std::span<const double> probes) {
    return residual(table, [&spec](double u) { return m_of(spec, u); }, probes);
}

std::vector<double> aligned_residual_probes(const CoefficientTable& table) {
    std::vector<double> probes;
    for (std::size_t j = 0; j < table.samples.size(); ++j) {
        const double x = table.node(j) - recursion::ln43;
        if (x >= table.u_min && x + recursion::ln4 <= table.u_max) probes.push_back(x);
    }
    return probes;
}

// ---------------------------------------------------------------------------
// symbol a(w)

std::complex<double> a_of_omega(double omega) {
    using namespace std::complex_literals;
    return recursion::coef_ln4 * std::exp(1i * (omega * recursion::ln4)) +
           recursion::coef_ln2 * std::exp(1i * (omega * recursion::ln2)) +
           recursion::coef_ln43 * std::exp(1i * (omega * recursion::ln43)) + recursion::coef_0;
}

double min_modulus_scan(double lo, double hi, double step, Execution exec) {
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("min_modulus_scan: bad grid");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(static) if (exec == Execution::parallel)
    for (long i = 0; i < count; ++i) {
        best = std::min(best, std::abs(a_of_omega(lo + static_cast<double>(i) * step)));
    }
    return best;
}

}  // namespace haarshift
