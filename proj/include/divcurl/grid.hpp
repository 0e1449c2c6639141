#pragma once

#include <array>
#include <cstdint>

namespace divcurl {

inline constexpr double kTwoPi = 6.28318530717958647692528676656;

/// Uniform grid on the periodic box [0, 2*pi)^dim with the same even number
/// of points per axis. The frequency lattice per axis is the asymmetric
/// integer range [-n/2, n/2), stored in DFT order (0..n/2-1, -n/2..-1).
struct TorusGrid {
    int dim = 0;          // 1, 2 or 3
    int n = 0;            // points per axis, even
    double spacing = 0.0; // 2*pi/n

    std::int64_t total() const {
        std::int64_t t = 1;
        for (int a = 0; a < dim; ++a) t *= n;
        return t;
    }

    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= spacing;
        return v;
    }

    /// DFT storage index -> signed frequency.
    int freq_of_index(int i) const { return i < n / 2 ? i : i - n; }

    /// Signed frequency in [-n/2, n/2) -> DFT storage index.
    int index_of_freq(int k) const { return k >= 0 ? k : k + n; }

    /// Per-axis storage indices of a flat (row-major, axis 0 slowest) index.
    std::array<int, 3> decode(std::int64_t flat) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int a = dim - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % n);
            flat /= n;
        }
        return idx;
    }

    std::int64_t encode(const std::array<int, 3>& idx) const {
        std::int64_t flat = 0;
        for (int a = 0; a < dim; ++a) flat = flat * n + idx[a];
        return flat;
    }

    /// Signed frequency vector of a flat spectral index (zeros beyond dim).
    std::array<int, 3> freqs(std::int64_t flat) const {
        auto idx = decode(flat);
        std::array<int, 3> k{0, 0, 0};
        for (int a = 0; a < dim; ++a) k[a] = freq_of_index(idx[a]);
        return k;
    }

    /// Physical coordinates of a flat sample index (zeros beyond dim).
    std::array<double, 3> point(std::int64_t flat) const {
        auto idx = decode(flat);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a) x[a] = idx[a] * spacing;
        return x;
    }

    bool operator==(const TorusGrid&) const = default;
};

/// Builds a grid, validating dim in {1,2,3} and n even within the per-dim
/// caps (4096 in 1D, 1024 in 2D, 128 in 3D). Throws SizingError otherwise.
TorusGrid make_grid(int dim, int n);

}  // namespace divcurl
