#pragma once

// Composite Gauss-Legendre rules for smooth integrands on [0, inf).
// Integrands may return double or a Jet.

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "panelur/errors.hpp"
#include "panelur/taylor.hpp"

namespace panelur {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double x_max = 60.0;  // in x = sqrt(2v) units
    int panels = 256;

    void validate() const {
        if (!(abs_tol > 0.0)) throw InvalidArgument("quadrature abs_tol must be positive");
        if (!(x_max > 0.0)) throw InvalidArgument("quadrature x_max must be positive");
        if (panels < 8) throw InvalidArgument("quadrature panels must be at least 8");
    }
};

template <class R>
struct QuadResult {
    R value;
    double error;   // panel-doubling difference plus the last tail chunk
    double x_end;   // where the tail extension stopped
};

namespace detail {

inline double max_abs(double v) { return std::abs(v); }
template <int N>
double max_abs(const Jet<N>& v) {
    double m = 0.0;
    for (int k = 0; k <= N; ++k) m = std::max(m, std::abs(v[k]));
    return m;
}

using GaussRule = boost::math::quadrature::gauss<double, 10>;

// 10-point Gauss-Legendre on each of `panels` equal subintervals of [a, b]
template <class F>
auto composite_gauss(const F& f, double a, double b, int panels) -> decltype(f(0.0)) {
    using R = decltype(f(0.0));
    const auto& x = GaussRule::abscissa();
    const auto& w = GaussRule::weights();
    const double h = (b - a) / panels;
    R total(0.0);
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        // boost stores the non-negative half of a symmetric rule
        R acc = f(mid + half * x[0]) * w[0];
        if (x[0] != 0.0) acc = acc + f(mid - half * x[0]) * w[0];
        for (std::size_t i = 1; i < x.size(); ++i)
            acc = acc + (f(mid + half * x[i]) + f(mid - half * x[i])) * w[i];
        total = total + acc * half;
    }
    return total;
}

}  // namespace detail

// Integral over [0, inf): composite rule on [0, x_max], then tail chunks
// until one contributes less than abs_tol/10.
template <class F>
auto integrate_semi_infinite(const F& f, const QuadratureSpec& spec) -> QuadResult<decltype(f(0.0))> {
    spec.validate();
    using R = decltype(f(0.0));
    const R coarse = detail::composite_gauss(f, 0.0, spec.x_max, spec.panels);
    R value = detail::composite_gauss(f, 0.0, spec.x_max, 2 * spec.panels);
    double error = detail::max_abs(value - coarse);
    const double chunk = 10.0;
    const int chunk_panels = std::max(8, static_cast<int>(2.0 * spec.panels * chunk / spec.x_max));
    double x = spec.x_max;
    double last = 0.0;
    for (int iter = 0;; ++iter) {
        const R piece = detail::composite_gauss(f, x, x + chunk, chunk_panels);
        value = value + piece;
        x += chunk;
        last = detail::max_abs(piece);
        if (last < spec.abs_tol / 10.0) break;
        if (x > 1400.0) throw QuadratureError("tail of semi-infinite integral does not decay");
    }
    error += last;
    if (!(error <= spec.abs_tol) || !std::isfinite(detail::max_abs(value)))
        throw QuadratureError("integral did not reach tolerance: error estimate " + std::to_string(error));
    return {value, error, x};
}

}  // namespace panelur
