#include "divcurl/grid.hpp"

#include <string>

#include "divcurl/errors.hpp"

namespace divcurl {

namespace {
int max_n_for_dim(int dim) {
    switch (dim) {
        case 1: return 4096;
        case 2: return 1024;
        case 3: return 128;
        default: return 0;
    }
}
}  // namespace

TorusGrid make_grid(int dim, int n) {
    if (dim < 1 || dim > 3)
        throw SizingError("make_grid: dim must be 1, 2 or 3, got " + std::to_string(dim));
    if (n % 2 != 0)
        throw SizingError("make_grid: n must be even, got " + std::to_string(n));
    if (n < 8 || n > max_n_for_dim(dim))
        throw SizingError("make_grid: n=" + std::to_string(n) + " out of range [8, " +
                          std::to_string(max_n_for_dim(dim)) + "] for dim " + std::to_string(dim));
    TorusGrid g;
    g.dim = dim;
    g.n = n;
    g.spacing = kTwoPi / n;
    return g;
}

}  // namespace divcurl
