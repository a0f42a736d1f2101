#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace hypwave {

// Adaptive Dormand-Prince 5(4) for a 2-component complex system.
// rhs(s, y, dy) fills dy. integrate_to steps from s0 to s1 (either direction);
// h_max caps the step (explicit-RK stability for oscillatory coefficients).
class Rkdp2c {
  public:
    using State = std::array<std::complex<double>, 2>;
    using Rhs = std::function<void(double, const State&, State&)>;

    Rkdp2c(Rhs rhs, double rtol = 1e-11, double atol = 1e-13, double h_max = 1e30)
        : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol), h_max_(h_max) {}

    void set_h_max(double h) { h_max_ = h; }

    // advances y from s0 to s1; throws on step failure
    void integrate_to(double s0, double s1, State& y) const {
        if (s0 == s1) return;
        const double dir = s1 > s0 ? 1.0 : -1.0;
        double s = s0;
        double h = dir * std::min(h_max_, std::abs(s1 - s0) * 0.1 + 1e-8);
        State k1;
        rhs_(s, y, k1);
        int rejects_in_row = 0;
        for (long it = 0; it < 200000000L; ++it) {
            if (dir * (s + h - s1) > 0.0) h = s1 - s;
            State k2, k3, k4, k5, k6, k7, yt, y5, y4err;
            auto axpy = [&](State& out, const State& base,
                            std::initializer_list<std::pair<double, const State*>> terms) {
                out = base;
                for (auto& [c, k] : terms) {
                    out[0] += h * c * (*k)[0];
                    out[1] += h * c * (*k)[1];
                }
            };
            axpy(yt, y, {{1.0 / 5, &k1}});
            rhs_(s + h / 5, yt, k2);
            axpy(yt, y, {{3.0 / 40, &k1}, {9.0 / 40, &k2}});
            rhs_(s + 3 * h / 10, yt, k3);
            axpy(yt, y, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}});
            rhs_(s + 4 * h / 5, yt, k4);
            axpy(yt, y,
                 {{19372.0 / 6561, &k1},
                  {-25360.0 / 2187, &k2},
                  {64448.0 / 6561, &k3},
                  {-212.0 / 729, &k4}});
            rhs_(s + 8 * h / 9, yt, k5);
            axpy(yt, y,
                 {{9017.0 / 3168, &k1},
                  {-355.0 / 33, &k2},
                  {46732.0 / 5247, &k3},
                  {49.0 / 176, &k4},
                  {-5103.0 / 18656, &k5}});
            rhs_(s + h, yt, k6);
            axpy(y5, y,
                 {{35.0 / 384, &k1},
                  {500.0 / 1113, &k3},
                  {125.0 / 192, &k4},
                  {-2187.0 / 6784, &k5},
                  {11.0 / 84, &k6}});
            rhs_(s + h, y5, k7);
            // embedded 4th-order error estimate
            const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                         e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
            double errnorm = 0.0;
            for (int i = 0; i < 2; ++i) {
                const std::complex<double> err =
                    h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                         e7 * k7[i]);
                const double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double q = std::abs(err) / sc;
                errnorm = std::max(errnorm, q);
            }
            if (errnorm <= 1.0) {
                s += h;
                y = y5;
                k1 = k7;  // FSAL
                rejects_in_row = 0;
                if (dir * (s - s1) >= 0.0 || std::abs(s - s1) < 1e-15 * std::abs(s1) + 1e-300)
                    return;
            } else if (++rejects_in_row > 60) {
                throw std::runtime_error("ode: step control failed");
            }
            double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
            fac = std::min(5.0, std::max(0.2, fac));
            h *= fac;
            if (std::abs(h) > h_max_) h = dir * h_max_;
            if (std::abs(h) < 1e-14) throw std::runtime_error("ode: step underflow");
        }
        throw std::runtime_error("ode: too many steps");
    }

  private:
    Rhs rhs_;
    double rtol_, atol_, h_max_;
};

}  // namespace hypwave
