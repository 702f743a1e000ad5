#pragma once

#include <span>
#include <vector>

#include "haarshift/rational.hpp"

namespace haarshift {

/// Interval [left, left + length) on the real line.
struct Interval {
    double left = 0.0;
    double length = 1.0;

    double right() const { return left + length; }
    bool contains(double x) const { return left <= x && x < left + length; }
};

/// Piecewise-constant function with exact rational breakpoints, zero outside
/// [first, last] breakpoint. Point evaluation takes the value of the piece to
/// the right of a breakpoint.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<Rational> breakpoints, std::vector<double> values);

    double operator()(double x) const;

    std::span<const Rational> breakpoints() const { return breakpoints_; }
    std::span<const double> values() const { return values_; }
    std::size_t pieces() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    /// Exact integral over [a, b] (a <= b), support clipping included.
    double integrate(double a, double b) const;
    double l1_norm() const;
    double l2_norm() const;
    double sup_norm() const;

private:
    std::vector<Rational> breakpoints_;
    std::vector<double> edges_;
    std::vector<double> values_;
};

/// Continuous piecewise-linear function with compact support. Values at the
/// first and last knot must be zero for continuity with the zero extension.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    PiecewiseLinear(std::vector<Rational> knots, std::vector<double> values);

    double operator()(double x) const;

    std::span<const Rational> knots() const { return knots_; }
    std::span<const double> values() const { return values_; }
    bool empty() const { return knots_.empty(); }

    /// Exact integral over [a, b]; a <= b required.
    double integrate(double a, double b) const;
    double l1_norm() const;

    /// Slope on (knots[i], knots[i+1]).
    double slope(std::size_t i) const;

private:
    std::vector<Rational> knots_;
    std::vector<double> positions_;
    std::vector<double> values_;
};

struct DiracAtom {
    Rational location;
    double weight;
};

/// Finite sum of weighted point masses with strictly increasing locations.
class DiracComb {
public:
    DiracComb() = default;
    explicit DiracComb(std::vector<DiracAtom> atoms);

    std::span<const DiracAtom> atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    double total_weight() const;

private:
    std::vector<DiracAtom> atoms_;
};

/// 7, -1, 1, -7 on the quarters of [0, 1].
StepFunction make_h();
/// -1, 1, 1, -1 on the quarters of [0, 1].
StepFunction make_g();
/// Indicator of [a, b).
StepFunction make_indicator(const Rational& a, const Rational& b);
StepFunction reflect(const StepFunction& f);

/// x -> |I|^{-1/2} f((x - left) / |I|) for f supported in [0, 1].
StepFunction rescale_to_interval(const StepFunction& f, const Rational& left, const Rational& length);
/// Same, with the interval endpoints converted exactly from binary doubles.
StepFunction rescale_to_interval(const StepFunction& f, const Interval& interval);

/// Exact convolution of two compactly supported step functions.
PiecewiseLinear convolve_steps(const StepFunction& f, const StepFunction& k);

/// Slope jumps of a continuous piecewise-linear function, i.e. its
/// distributional second derivative. Jumps below 1e-12 of the largest slope
/// are treated as zero.
DiracComb second_derivative_atoms(const PiecewiseLinear& p, bool positive_axis_only);

double integrate_pl(const PiecewiseLinear& p, double a, double b);

/// The profile h * g_1 with g_1(x) = g(-x); cached after the first call.
const PiecewiseLinear& haar_profile();

}  // namespace haarshift
