#include "hypwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypwave {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double k15;
    double err;
};

template <class F>
PanelResult gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double g7 = fc * kWg[3];
    double k15 = fc * kWgk[7];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fv = f(c - dx) + f(c + dx);
        k15 += fv * kWgk[i];
        if (i % 2 == 1) g7 += fv * kWg[i / 2];
    }
    k15 *= h;
    g7 *= h;
    double err = std::abs(k15 - g7);
    err = 200.0 * err * std::sqrt(std::max(err, 0.0));
    return {k15, std::min(err, std::abs(k15 - g7) * 200.0 + 1e-300)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_intervals) {
    QuadResult out;
    if (a == b) return out;
    struct Seg {
        double a, b, val, err;
    };
    std::vector<Seg> heap;
    auto first = gk15(f, a, b);
    heap.push_back({a, b, first.k15, first.err});
    out.evaluations = 15;
    double total = first.k15, toterr = first.err;
    auto cmp = [](const Seg& x, const Seg& y) { return x.err < y.err; };
    std::make_heap(heap.begin(), heap.end(), cmp);
    while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) &&
           (int)heap.size() < max_intervals) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Seg worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {  // interval exhausted
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.k15 + right.k15 - worst.val;
        toterr += left.err + right.err - worst.err;
        heap.push_back({worst.a, mid, left.k15, left.err});
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back({mid, worst.b, right.k15, right.err});
        std::push_heap(heap.begin(), heap.end(), cmp);
    }
    // deterministic re-sum in interval order
    std::sort(heap.begin(), heap.end(),
              [](const Seg& x, const Seg& y) { return x.a < y.a; });
    double sum = 0.0, errsum = 0.0;
    for (const auto& s : heap) {
        sum += s.val;
        errsum += s.err;
    }
    out.value = sum;
    out.error = errsum;
    out.converged = errsum <= std::max(abs_tol, rel_tol * std::abs(sum)) * 4.0;
    return out;
}

QuadResult integrate_complex_re_im(const std::function<std::complex<double>(double)>& f,
                                   double a, double b, double abs_tol, double rel_tol,
                                   std::complex<double>& out) {
    auto re = integrate([&](double x) { return f(x).real(); }, a, b, abs_tol, rel_tol);
    auto im = integrate([&](double x) { return f(x).imag(); }, a, b, abs_tol, rel_tol);
    out = {re.value, im.value};
    QuadResult r;
    r.value = std::abs(out);
    r.error = re.error + im.error;
    r.converged = re.converged && im.converged;
    r.evaluations = re.evaluations + im.evaluations;
    return r;
}

namespace {
template <class T>
T simpson_impl(const std::vector<double>& x, const std::vector<T>& y) {
    const size_t n = x.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("simpson: bad grid");
    T acc{};
    size_t i = 0;
    while (i + 2 < n) {
        const double h0 = x[i + 1] - x[i], h1 = x[i + 2] - x[i + 1];
        const double h = h0 + h1;
        // non-uniform Simpson weights
        acc += y[i] * (h * (2.0 * h0 - h1) / (6.0 * h0)) +
               y[i + 1] * (h * h * h / (6.0 * h0 * h1)) +
               y[i + 2] * (h * (2.0 * h1 - h0) / (6.0 * h1));
        i += 2;
    }
    if (i + 1 < n) {  // trapezoid tail
        acc += (y[i] + y[i + 1]) * (0.5 * (x[i + 1] - x[i]));
    }
    return acc;
}
}  // namespace

double simpson(const std::vector<double>& x, const std::vector<double>& y) {
    return simpson_impl(x, y);
}

std::complex<double> simpson(const std::vector<double>& x,
                             const std::vector<std::complex<double>>& y) {
    return simpson_impl(x, y);
}

GaussLegendre::GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            const double dp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = -p0 / dp;
            t += dt;
            if (std::abs(dt) < 1e-16) break;
        }
        const double dp = n * (t * p0 - p1) / (t * t - 1.0);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

std::vector<double> spherical_bessel_jn(int nmax, double x) {
    std::vector<double> j(nmax + 1, 0.0);
    const double ax = std::abs(x);
    if (ax < 1e-300) {
        j[0] = 1.0;
        return j;
    }
    if (ax < 0.6 + 0.08 * nmax) {
        // power series: j_n = x^n/(2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+3)(2n+5)...(2n+1+2k))
        for (int n = 0; n <= nmax; ++n) {
            double dfact = 1.0;
            for (int k = 1; k <= 2 * n + 1; k += 2) dfact *= k;
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < 60; ++k) {
                term *= -0.5 * x * x / (k * (2.0 * n + 2.0 * k + 1.0));
                sum += term;
                if (std::abs(term) < 1e-19 * std::abs(sum)) break;
            }
            j[n] = std::pow(x, n) / dfact * sum;
        }
        return j;
    }
    // Miller downward recurrence
    int start = nmax + 12 + (int)(1.2 * std::sqrt((double)nmax) * 2 + ax * 0.0);
    if (ax > nmax) start = nmax + 12;
    double jp1 = 0.0, jn = 1e-300;
    std::vector<double> tmp(nmax + 1, 0.0);
    for (int k = start; k >= 0; --k) {
        const double jm1 = (2.0 * k + 3.0) / x * jn - jp1;
        jp1 = jn;
        jn = jm1;
        if (k <= nmax) tmp[k] = jn;
        if (std::abs(jn) > 1e250) {  // rescale
            jp1 /= 1e250;
            jn /= 1e250;
            for (int q = k; q <= nmax; ++q) tmp[q] /= 1e250;
        }
    }
    const double j0 = std::sin(x) / x;
    const double scale = j0 / tmp[0];
    for (int n = 0; n <= nmax; ++n) j[n] = tmp[n] * scale;
    return j;
}

std::vector<std::complex<double>> legendre_oscillatory_moments(int nmax, double w) {
    auto j = spherical_bessel_jn(nmax, std::abs(w));
    std::vector<std::complex<double>> m(nmax + 1);
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> ipow(1.0, 0.0);
    const double sgn = w >= 0 ? 1.0 : -1.0;
    std::complex<double> isg = sgn >= 0 ? I : -I;
    for (int n = 0; n <= nmax; ++n) {
        m[n] = 2.0 * ipow * j[n];
        ipow *= isg;
    }
    return m;
}

}  // namespace hypwave
