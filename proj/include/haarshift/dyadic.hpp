#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "haarshift/numeric.hpp"
#include "haarshift/piecewise.hpp"

namespace haarshift {

/// Levels n in [n_min, n_max): interval lengths r * 2^n.
struct LevelRange {
    int n_min = 0;
    int n_max = 0;

    int count() const { return n_max - n_min; }
    bool empty() const { return n_max <= n_min; }
};

/// One draw of the dilation r in [1, 2) and of the bits beta_i for
/// i in [i_min, n_max); bits below i_min are taken as zero.
struct GridSample {
    double r = 1.0;
    int i_min = 0;
    int n_max = 0;
    std::vector<std::uint8_t> bits;  // bits[i - i_min]
    std::uint64_t seed = 0;
    std::uint64_t index = 0;

    int bit(int i) const { return (i < i_min || i >= n_max) ? 0 : bits[static_cast<std::size_t>(i - i_min)]; }
};

/// Sample with r and the given bits; for deterministic grids in tests.
GridSample make_grid(double r, int i_min, int n_max, std::vector<std::uint8_t> bits = {});

/// r * sum_{i_min <= i < n} 2^i beta_i: the shift of the level-n lattice
/// {offset + k r 2^n}.
double level_offset(const GridSample& s, int n);

/// The level-n interval [left, left + r 2^n) containing x.
Interval interval_containing(const GridSample& s, int n, double x);

/// Bits i.i.d. fair, r = 2^U with U uniform (density 1 / (r ln 2) on [1, 2)).
/// Deterministic in (seed, index).
GridSample sample_grid(std::uint64_t seed, int i_min, int n_max, std::uint64_t index = 0);

/// Default precision floor: bits more than 52 levels below the finest
/// admitted level are dropped.
inline int default_bit_floor(const LevelRange& levels) { return levels.n_min - 52; }

/// Levels for a pair at distance |x - y|: starts one below floor(log2 |x-y|)
/// and stops once 14 sup|gamma| 2^{-N+1} <= tail_tol.
LevelRange pair_levels(double distance, double gamma_sup, double tail_tol);

/// 14 sup|gamma| 2^{-N+1} for the cutoff N = levels.n_max.
double tail_bound(const LevelRange& levels, double gamma_sup, double scale = 1.0);

double h_value(double t);  // h on [0, 1]
double g_value(double t);  // g on [0, 1]

/// Left edge of the cell of {offset + k len} holding x. Edges are always
/// formed as offset + k * len, so a point sitting on an edge lands in the
/// same cell however it was computed.
inline double cell_left(double offset, double len, double x) {
    double k = std::floor((x - offset) / len);
    if (x < offset + k * len) k -= 1.0;
    if (x >= offset + (k + 1.0) * len) k += 1.0;
    return offset + k * len;
}

/// sum over admitted I containing x and y of gamma(|I|) h_I(x) g_I(y).
/// `touched`, if non-null, is incremented once per interval examined.
template <class Gamma>
double shift_kernel_sum(const GridSample& s, const Gamma& gamma, double x, double y, const LevelRange& levels,
                        long* touched = nullptr) {
    if (x == y) throw std::invalid_argument("shift_kernel_sum: x == y lies on the kernel diagonal");
    double sum = 0.0;
    double offset = level_offset(s, levels.n_min);
    double len = s.r * std::ldexp(1.0, levels.n_min);
    for (int n = levels.n_min; n < levels.n_max; ++n) {
        const double left = cell_left(offset, len, x);
        if (touched != nullptr) ++*touched;
        if (y >= left && y < left + len) {
            const double tx = (x - left) / len;
            const double ty = (y - left) / len;
            sum += gamma(len) * h_value(tx) * g_value(ty) / len;
        }
        offset += len * s.bit(n);
        len *= 2.0;
    }
    return sum;
}

}  // namespace haarshift
