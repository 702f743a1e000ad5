#pragma once

// Truncated Neumann series for the fixed-point map
//   c = B c + f,  (B c)(y) = sum_j w_j c(y + s_j),  f(y) = -8/99 m(y - ln 4/3),
// summed explicitly over words of shifts, grouped by how often each shift
// occurs (words with the same counts land on the same point). It evaluates
// m directly, with no grid and no interpolation.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

struct Neumann {
    std::function<double(double)> m;
    int depth = 12;

    double w[3] = {1.0 / 99.0, 36.0 / 99.0, 56.0 / 99.0};
    double s[3] = {std::log(3.0), std::log(1.5), -std::log(4.0 / 3.0)};

    double forcing(double y) const { return -8.0 / 99.0 * m(y - std::log(4.0 / 3.0)); }

    // sum over words of length k of weight(word) * g(y + shift(word))
    template <class G>
    double level(const G& g, double y, int k) const {
        double sum = 0.0;
        for (int a = 0; a <= k; ++a) {
            for (int b = 0; a + b <= k; ++b) {
                const int c = k - a - b;
                const double log_multinom = std::lgamma(k + 1.0) - std::lgamma(a + 1.0) - std::lgamma(b + 1.0) -
                                            std::lgamma(c + 1.0);
                const double log_weight = a * std::log(w[0]) + b * std::log(w[1]) + c * std::log(w[2]);
                sum += std::exp(log_multinom + log_weight) * g(y + a * s[0] + b * s[1] + c * s[2]);
            }
        }
        return sum;
    }

    double value(double y) const {
        double sum = 0.0;
        auto f = [this](double t) { return forcing(t); };
        for (int k = 0; k <= depth; ++k) sum += level(f, y, k);
        return sum;
    }

    // Worst-case remainder for any m with the same sup: q^{D+1} / (1 - q) * 8/99 * sup|m|.
    double generic_remainder(double m_sup) const {
        const double q = 31.0 / 33.0;
        return std::pow(q, depth + 1) / (1.0 - q) * 8.0 / 99.0 * m_sup;
    }

    // Remainder bound at y using |f| word by word up to `extra_depth`, then
    // the generic geometric tail beyond it.
    double pointwise_remainder(double y, int extra_depth, double m_sup) const {
        auto af = [this](double t) { return std::abs(forcing(t)); };
        double sum = 0.0;
        for (int k = depth + 1; k <= extra_depth; ++k) sum += level(af, y, k);
        const double q = 31.0 / 33.0;
        return sum + std::pow(q, extra_depth + 1) / (1.0 - q) * 8.0 / 99.0 * m_sup;
    }
};

}  // namespace oracle
