#include "hypwave/symbol.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hypwave {

namespace {
using C = std::complex<double>;

void check_even(const Symbol& m) {
    for (double x : {0.3, 1.7, 8.9, 24.0}) {
        const C lo = m.eval(C(x, 0.0)), hi = m.eval(C(-x, 0.0));
        if (std::abs(lo - hi) > 1e-12 * (1.0 + std::abs(lo)))
            throw std::invalid_argument("make_symbol: symbol is not even");
    }
}
}  // namespace

std::string Symbol::describe() const {
    std::ostringstream os;
    switch (family) {
        case SymbolFamily::rational_power:
            os << "rational:" << order << ":" << scale;
            break;
        case SymbolFamily::gaussian:
            os << "gaussian";
            break;
        case SymbolFamily::custom:
            os << "custom:" << order;
            break;
    }
    return os.str();
}

Symbol make_symbol(SymbolFamily family, double b, double a, double c,
                   const SpaceParams& p) {
    Symbol m;
    m.family = family;
    m.tube = a;
    if (family == SymbolFamily::rational_power) {
        if (c <= a)
            throw std::invalid_argument(
                "make_symbol: rational_power needs c > a (branch points on the tube)");
        m.order = b;
        m.scale = c;
        const double c2 = c * c;
        m.eval = [c2, b](C lam) { return std::pow(c2 + lam * lam, 0.5 * b); };
        m.deriv = [c2, b](C lam, int k) -> C {
            const C w = c2 + lam * lam;
            switch (k) {
                case 0:
                    return std::pow(w, 0.5 * b);
                case 1:
                    return b * lam * std::pow(w, 0.5 * b - 1.0);
                case 2:
                    return b * std::pow(w, 0.5 * b - 1.0) +
                           b * (b - 2.0) * lam * lam * std::pow(w, 0.5 * b - 2.0);
                default:
                    throw std::invalid_argument("symbol derivative order > 2");
            }
        };
    } else if (family == SymbolFamily::gaussian) {
        m.order = 0.0;
        m.scale = 1.0;
        m.eval = [](C lam) { return std::exp(-lam * lam); };
        m.deriv = [](C lam, int k) -> C {
            const C e = std::exp(-lam * lam);
            switch (k) {
                case 0:
                    return e;
                case 1:
                    return -2.0 * lam * e;
                case 2:
                    return (4.0 * lam * lam - 2.0) * e;
                default:
                    throw std::invalid_argument("symbol derivative order > 2");
            }
        };
    } else {
        throw std::invalid_argument("make_symbol: use make_custom_symbol for custom");
    }
    m.epsilon = (m.order < -p.d) ? (-m.order - p.d) : 0.0;
    check_even(m);
    return m;
}

Symbol make_custom_symbol(std::function<std::complex<double>(std::complex<double>)> eval,
                          double b, double a, const SpaceParams& p) {
    Symbol m;
    m.family = SymbolFamily::custom;
    m.order = b;
    m.tube = a;
    m.eval = std::move(eval);
    const auto ev = m.eval;
    m.deriv = [ev](C lam, int k) -> C {
        // central differences on the custom evaluator
        const double h = 1e-5 * (1.0 + std::abs(lam));
        switch (k) {
            case 0:
                return ev(lam);
            case 1:
                return (ev(lam + h) - ev(lam - h)) / (2.0 * h);
            case 2:
                return (ev(lam + h) - 2.0 * ev(lam) + ev(lam - h)) / (h * h);
            default:
                throw std::invalid_argument("symbol derivative order > 2");
        }
    };
    m.epsilon = (b < -p.d) ? (-b - p.d) : 0.0;
    check_even(m);
    return m;
}

std::array<double, 3> symbol_bound_constants(const Symbol& m, double lam_max, int n_lam,
                                             int n_im) {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    for (int j = 0; j < n_im; ++j) {
        const double im = m.tube * j / std::max(1, n_im - 1);
        for (int i = 0; i < n_lam; ++i) {
            const double re = lam_max * i / (n_lam - 1);
            const C lam(re, im);
            for (int k = 0; k <= 2; ++k) {
                const double v = std::abs(m.deriv(lam, k));
                c[k] = std::max(c[k], v * std::pow(1.0 + std::abs(re), k - m.order));
            }
        }
    }
    return c;
}

Symbol parse_symbol(const std::string& text, const SpaceParams& p) {
    if (text == "gaussian") return make_symbol(SymbolFamily::gaussian, 0.0, p.rho, 1.0, p);
    std::istringstream is(text);
    std::string kind;
    std::getline(is, kind, ':');
    if (kind == "rational") {
        std::string bs, cs;
        if (!std::getline(is, bs, ':'))
            throw std::invalid_argument("parse_symbol: rational:<b>[:c]");
        double b = std::stod(bs);
        double c = std::getline(is, cs, ':') ? std::stod(cs) : p.rho + 1.0;
        return make_symbol(SymbolFamily::rational_power, b, p.rho, c, p);
    }
    throw std::invalid_argument("parse_symbol: unknown symbol '" + text + "'");
}

}  // namespace hypwave
