#include "haarshift/dyadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace haarshift {

GridSample make_grid(double r, int i_min, int n_max, std::vector<std::uint8_t> bits) {
    if (!(r >= 1.0 && r < 2.0)) throw std::invalid_argument("grid dilation r must lie in [1, 2)");
    if (!(i_min < n_max)) throw std::invalid_argument("grid needs i_min < n_max");
    const auto width = static_cast<std::size_t>(n_max - i_min);
    if (bits.empty()) bits.assign(width, 0);
    if (bits.size() != width) throw std::invalid_argument("grid bit count must equal n_max - i_min");
    for (auto b : bits) {
        if (b > 1) throw std::invalid_argument("grid bits must be 0 or 1");
    }
    GridSample s;
    s.r = r;
    s.i_min = i_min;
    s.n_max = n_max;
    s.bits = std::move(bits);
    return s;
}

double level_offset(const GridSample& s, int n) {
    double sum = 0.0;
    const int top = std::min(n, s.n_max);
    for (int i = s.i_min; i < top; ++i) {
        if (s.bits[static_cast<std::size_t>(i - s.i_min)] != 0) sum += std::ldexp(1.0, i);
    }
    return s.r * sum;
}

Interval interval_containing(const GridSample& s, int n, double x) {
    const double len = s.r * std::ldexp(1.0, n);
    const double offset = level_offset(s, n);
    return {cell_left(offset, len, x), len};
}

GridSample sample_grid(std::uint64_t seed, int i_min, int n_max, std::uint64_t index) {
    if (!(i_min < n_max)) throw std::invalid_argument("sample_grid needs i_min < n_max");
    CounterRng rng(seed, index);
    GridSample s;
    s.r = std::exp2(rng.uniform());
    if (s.r >= 2.0) s.r = std::nextafter(2.0, 1.0);
    s.i_min = i_min;
    s.n_max = n_max;
    s.seed = seed;
    s.index = index;
    const auto width = static_cast<std::size_t>(n_max - i_min);
    s.bits.resize(width);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < width; ++i) {
        if (i % 64 == 0) word = rng.next();
        s.bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
    }
    return s;
}

LevelRange pair_levels(double distance, double gamma_sup, double tail_tol) {
    if (!(distance > 0.0)) throw std::invalid_argument("pair_levels: distance must be positive");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("pair_levels: tail tolerance must be positive");
    LevelRange lv;
    lv.n_min = static_cast<int>(std::floor(std::log2(distance))) - 1;
    int n = lv.n_min + 1;
    while (14.0 * gamma_sup * std::ldexp(1.0, -n + 1) > tail_tol) ++n;
    lv.n_max = n;
    return lv;
}

double tail_bound(const LevelRange& levels, double gamma_sup, double scale) {
    return 14.0 * gamma_sup * scale * std::ldexp(1.0, -levels.n_max + 1);
}

double h_value(double t) {
    if (t < 0.0 || t >= 1.0) return 0.0;
    if (t < 0.25) return 7.0;
    if (t < 0.5) return -1.0;
    if (t < 0.75) return 1.0;
    return -7.0;
}

double g_value(double t) {
    if (t < 0.0 || t >= 1.0) return 0.0;
    if (t < 0.25) return -1.0;
    if (t < 0.75) return 1.0;
    return -1.0;
}

}  // namespace haarshift
