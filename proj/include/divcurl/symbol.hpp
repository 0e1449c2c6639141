#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>

#include "divcurl/field.hpp"
#include "divcurl/grid.hpp"

namespace divcurl {

/// Symbol a(x, xi) of a pseudodifferential operator. `order` is the decay
/// exponent delta: |a| <~ (1+|xi|)^delta. Multiplier symbols ignore x.
struct Symbol {
    double order = 0.0;
    bool multiplier = false;
    std::string name;
    std::function<Cplx(const std::array<double, 3>& x, const std::array<double, 3>& xi)> eval;

    Cplx operator()(const std::array<double, 3>& x, const std::array<double, 3>& xi) const {
        return eval(x, xi);
    }
};

/// x-independent symbol from a frequency rule.
Symbol multiplier_symbol(double order, std::string name,
                         std::function<Cplx(const std::array<double, 3>& xi)> fn);

/// Bessel symbol (1+|xi|^2)^{order/2}.
Symbol bessel_symbol(double order);

/// Discrete analogue of the seminorm ||a||_{order,0,beta}: sup over the
/// grid's points and frequency lattice of the iterated forward difference of
/// total order beta in xi, weighted by (1+|xi|)^{-order+beta}.
double symbol_seminorm(const Symbol& a, const TorusGrid& grid, int beta);

}  // namespace divcurl
