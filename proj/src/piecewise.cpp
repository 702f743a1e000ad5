#include "haarshift/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace haarshift {

namespace {

std::vector<double> to_doubles(std::span<const Rational> qs) {
    std::vector<double> out;
    out.reserve(qs.size());
    for (const auto& q : qs) out.push_back(q.to_double());
    return out;
}

void require_increasing(std::span<const Rational> qs, const char* what) {
    for (std::size_t i = 1; i < qs.size(); ++i) {
        if (!(qs[i - 1] < qs[i])) throw std::invalid_argument(std::string(what) + " must be strictly increasing");
    }
}

// Index of the piece [edges[i], edges[i+1]) containing x, or npos.
std::size_t locate(std::span<const double> edges, double x) {
    if (edges.size() < 2 || x < edges.front() || x >= edges.back()) return static_cast<std::size_t>(-1);
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

Rational overlap(const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1) {
    const Rational lo = max(a0, b0);
    const Rational hi = min(a1, b1);
    return lo < hi ? hi - lo : Rational(0);
}

}  // namespace

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(std::vector<Rational> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty() && values_.empty()) return;
    if (breakpoints_.size() != values_.size() + 1 || values_.empty()) {
        throw std::invalid_argument("step function needs one value per breakpoint interval");
    }
    require_increasing(breakpoints_, "step function breakpoints");
    edges_ = to_doubles(breakpoints_);
}

double StepFunction::operator()(double x) const {
    const auto i = locate(edges_, x);
    return i == static_cast<std::size_t>(-1) ? 0.0 : values_[i];
}

double StepFunction::integrate(double a, double b) const {
    if (b < a) throw std::invalid_argument("integrate: a > b");
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double lo = std::max(a, edges_[i]);
        const double hi = std::min(b, edges_[i + 1]);
        if (lo < hi) sum += values_[i] * (hi - lo);
    }
    return sum;
}

double StepFunction::l1_norm() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        sum += std::abs(values_[i]) * (breakpoints_[i + 1] - breakpoints_[i]).to_double();
    }
    return sum;
}

double StepFunction::l2_norm() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        sum += values_[i] * values_[i] * (breakpoints_[i + 1] - breakpoints_[i]).to_double();
    }
    return std::sqrt(sum);
}

double StepFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------------------
// PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<Rational> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() != values_.size()) throw std::invalid_argument("piecewise-linear: one value per knot");
    if (knots_.size() == 1) throw std::invalid_argument("piecewise-linear: need zero or at least two knots");
    require_increasing(knots_, "piecewise-linear knots");
    positions_ = to_doubles(knots_);
}

double PiecewiseLinear::operator()(double x) const {
    const auto i = locate(positions_, x);
    if (i == static_cast<std::size_t>(-1)) return 0.0;
    const double t = (x - positions_[i]) / (positions_[i + 1] - positions_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

double PiecewiseLinear::slope(std::size_t i) const {
    return (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]).to_double();
}

double PiecewiseLinear::integrate(double a, double b) const {
    if (b < a) throw std::invalid_argument("integrate: a > b");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < positions_.size(); ++i) {
        const double x0 = positions_[i];
        const double x1 = positions_[i + 1];
        const double lo = std::max(a, x0);
        const double hi = std::min(b, x1);
        if (!(lo < hi)) continue;
        if (lo == x0 && hi == x1) {
            sum += 0.5 * (values_[i] + values_[i + 1]) * (x1 - x0);
            continue;
        }
        const double w = x1 - x0;
        const double vlo = values_[i] + (lo - x0) / w * (values_[i + 1] - values_[i]);
        const double vhi = values_[i] + (hi - x0) / w * (values_[i + 1] - values_[i]);
        sum += 0.5 * (vlo + vhi) * (hi - lo);
    }
    return sum;
}

double PiecewiseLinear::l1_norm() const {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < positions_.size(); ++i) {
        const double v0 = values_[i];
        const double v1 = values_[i + 1];
        const double w = positions_[i + 1] - positions_[i];
        if (v0 * v1 >= 0.0) {
            sum += 0.5 * (std::abs(v0) + std::abs(v1)) * w;
        } else {
            // sign change inside the segment: two triangles
            sum += 0.5 * (v0 * v0 + v1 * v1) / (std::abs(v0) + std::abs(v1)) * w;
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// DiracComb

DiracComb::DiracComb(std::vector<DiracAtom> atoms) : atoms_(std::move(atoms)) {
    for (std::size_t i = 1; i < atoms_.size(); ++i) {
        if (!(atoms_[i - 1].location < atoms_[i].location)) {
            throw std::invalid_argument("dirac comb locations must be strictly increasing");
        }
    }
    for (const auto& a : atoms_) {
        if (a.weight == 0.0) throw std::invalid_argument("dirac comb weights must be nonzero");
    }
}

double DiracComb::total_weight() const {
    double sum = 0.0;
    for (const auto& a : atoms_) sum += a.weight;
    return sum;
}

// ---------------------------------------------------------------------------
// Constructors and operations

StepFunction make_h() {
    return StepFunction({Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)},
                        {7.0, -1.0, 1.0, -7.0});
}

StepFunction make_g() {
    return StepFunction({Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)},
                        {-1.0, 1.0, 1.0, -1.0});
}

StepFunction make_indicator(const Rational& a, const Rational& b) { return StepFunction({a, b}, {1.0}); }

StepFunction reflect(const StepFunction& f) {
    if (f.empty()) return {};
    const auto bp = f.breakpoints();
    const auto vals = f.values();
    std::vector<Rational> nbp;
    std::vector<double> nvals;
    nbp.reserve(bp.size());
    nvals.reserve(vals.size());
    for (std::size_t i = bp.size(); i-- > 0;) nbp.push_back(-bp[i]);
    for (std::size_t i = vals.size(); i-- > 0;) nvals.push_back(vals[i]);
    return StepFunction(std::move(nbp), std::move(nvals));
}

StepFunction rescale_to_interval(const StepFunction& f, const Rational& left, const Rational& length) {
    if (!(Rational(0) < length)) throw std::invalid_argument("rescale_to_interval: nonpositive length");
    if (f.empty()) return {};
    const auto bp = f.breakpoints();
    if (bp.front() < Rational(0) || Rational(1) < bp.back()) {
        throw std::invalid_argument("rescale_to_interval: support must lie in [0, 1]");
    }
    const double scale = 1.0 / std::sqrt(length.to_double());
    std::vector<Rational> nbp;
    std::vector<double> nvals;
    for (const auto& q : bp) nbp.push_back(left + length * q);
    for (double v : f.values()) nvals.push_back(v * scale);
    return StepFunction(std::move(nbp), std::move(nvals));
}

StepFunction rescale_to_interval(const StepFunction& f, const Interval& interval) {
    if (!(interval.length > 0.0)) throw std::invalid_argument("rescale_to_interval: nonpositive length");
    return rescale_to_interval(f, Rational::from_double(interval.left), Rational::from_double(interval.length));
}

PiecewiseLinear convolve_steps(const StepFunction& f, const StepFunction& k) {
    if (f.empty() || k.empty()) return {};
    const auto a = f.breakpoints();
    const auto b = k.breakpoints();
    std::vector<Rational> knots;
    knots.reserve(a.size() * b.size());
    for (const auto& ai : a) {
        for (const auto& bj : b) knots.push_back(ai + bj);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    // (f*k)(x) = sum_ij f_i k_j |(a_i, a_i+1) ∩ (x - b_j+1, x - b_j)|, linear between knot sums
    const auto fv = f.values();
    const auto kv = k.values();
    std::vector<double> values;
    values.reserve(knots.size());
    for (const auto& x : knots) {
        double v = 0.0;
        for (std::size_t i = 0; i < fv.size(); ++i) {
            for (std::size_t j = 0; j < kv.size(); ++j) {
                const Rational len = overlap(a[i], a[i + 1], x - b[j + 1], x - b[j]);
                if (len.num() != 0) v += fv[i] * kv[j] * len.to_double();
            }
        }
        values.push_back(v);
    }
    return PiecewiseLinear(std::move(knots), std::move(values));
}

DiracComb second_derivative_atoms(const PiecewiseLinear& p, bool positive_axis_only) {
    const auto knots = p.knots();
    if (knots.empty()) return {};
    const std::size_t n = knots.size();
    std::vector<double> slopes(n + 1, 0.0);  // slopes[i] = slope left of knot i; slopes[n] = 0
    double scale = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        slopes[i + 1] = p.slope(i);
        scale = std::max(scale, std::abs(slopes[i + 1]));
    }
    std::vector<DiracAtom> atoms;
    for (std::size_t i = 0; i < n; ++i) {
        if (positive_axis_only && !(Rational(0) < knots[i])) continue;
        const double jump = slopes[i + 1] - slopes[i];
        if (std::abs(jump) <= 1e-12 * scale) continue;
        atoms.push_back({knots[i], jump});
    }
    return DiracComb(std::move(atoms));
}

double integrate_pl(const PiecewiseLinear& p, double a, double b) { return p.integrate(a, b); }

const PiecewiseLinear& haar_profile() {
    static const PiecewiseLinear profile = convolve_steps(make_h(), reflect(make_g()));
    return profile;
}

}  // namespace haarshift
