#pragma once

#include <complex>
#include <functional>
#include <string>

#include "hypwave/space.hpp"

namespace hypwave {

enum class SymbolFamily { rational_power, gaussian, custom };

// Even symbol m(lambda) on the tube |Im lambda| <= a with the decay
// |d^k m| <= C (1 + |Re lambda|)^{b - k}.
struct Symbol {
    SymbolFamily family = SymbolFamily::gaussian;
    double order = 0.0;       // b
    double tube = 0.0;        // a
    double scale = 1.0;       // c in (c^2 + lambda^2)^{b/2}
    double epsilon = 0.0;     // -b - d when b < -d, else 0
    std::function<std::complex<double>(std::complex<double>)> eval;
    // analytic lambda-derivative of order k (k <= 2)
    std::function<std::complex<double>(std::complex<double>, int)> deriv;

    std::string describe() const;
};

// rational_power: m = (c^2 + lambda^2)^{b/2}, needs c > a to keep the branch
// points off the tube.  gaussian: m = e^{-lambda^2}.
Symbol make_symbol(SymbolFamily family, double b, double a, double c,
                   const SpaceParams& p);

Symbol make_custom_symbol(std::function<std::complex<double>(std::complex<double>)> eval,
                          double b, double a, const SpaceParams& p);

// sup over a tube grid of |d^k m| (1+|Re lam|)^{k-b} for k = 0, 1, 2
// (finite-difference check of the symbol inequalities).
std::array<double, 3> symbol_bound_constants(const Symbol& m, double lam_max = 50.0,
                                             int n_lam = 120, int n_im = 5);

// "m:rational:b:c" or "m:gaussian" parsing for the CLI
Symbol parse_symbol(const std::string& text, const SpaceParams& p);

}  // namespace hypwave
