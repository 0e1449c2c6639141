#pragma once

#include <stdexcept>
#include <string>

namespace divcurl {

/// Precondition violation on grid/field sizing (odd n, out-of-range dim, ...).
struct SizingError : std::invalid_argument {
    explicit SizingError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two fields (or a field and a request) do not live on the same grid.
struct GridMismatchError : std::invalid_argument {
    explicit GridMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// A symbol evaluated to a non-finite value on a lattice frequency.
struct SingularSymbolError : std::runtime_error {
    explicit SingularSymbolError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation with an explicit size cap was asked to exceed it.
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace divcurl
