#pragma once

// Limiting CDF of T(rho_hat - 1) by inverting the characteristic function of
// Z_x = x V - U:
//   P(U/V < x) = 1/2 + 1/pi int_0^inf Im phi_x(theta) / theta dtheta,
//   phi_x(theta) = e^{i r theta/2} B(-i theta, i theta x)^{-1/2}.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "panelur/errors.hpp"
#include "panelur/fredholm.hpp"
#include "panelur/quadrature.hpp"

namespace panelur {

struct ImhofSpec {
    double abs_tol = 1e-7;
    double theta_cap = 1e7;
};

inline DeterministicCase model_case(int j) {
    switch (j) {
        case 1: return DeterministicCase::None;
        case 2: return DeterministicCase::Intercept;
        case 3: return DeterministicCase::InterceptTrend;
        default: throw InvalidArgument("model index must be 1, 2 or 3, got " + std::to_string(j));
    }
}

namespace detail {

// 10-point Gauss-Legendre nodes on [-1, 1] in ascending order
inline const std::array<std::pair<double, double>, 10>& sorted_gauss10() {
    static const auto rule = [] {
        std::array<std::pair<double, double>, 10> r{};
        const auto& x = GaussRule::abscissa();
        const auto& w = GaussRule::weights();
        int k = 0;
        for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) r[k++] = {-x[i], w[i]};
        for (std::size_t i = 0; i < x.size(); ++i) r[k++] = {x[i], w[i]};
        return r;
    }();
    return rule;
}

inline double imhof_panel_width(double theta) {
    if (theta < 20.0) return 0.25;
    if (theta < 200.0) return 0.5;
    if (theta < 2000.0) return 2.0;
    return 8.0;
}

}  // namespace detail

inline double imhof_cdf(int j, double x, double c, double r = 1.0, const ImhofSpec& spec = {}) {
    using C = std::complex<double>;
    const auto cs = model_case(j);
    if (!(r > 0.0)) throw InvalidArgument("imhof_cdf: r must be positive");
    if (!(c >= 0.0)) throw InvalidArgument("imhof_cdf: c must be non-negative");
    if (!std::isfinite(x)) throw InvalidArgument("imhof_cdf: x must be finite");

    double phase = 0.0;  // continuous arg of B along the path
    auto integrand = [&](double theta, double& envelope) {
        const C u(0.0, -theta);
        const C v(0.0, theta * x);
        const auto b = mgf_bracket_z<C>(cs, C(c), 2.0 * v - C(c * c));
        const C B = b.b0 + b.b1 * u + b.b2 * u * u;
        const double mod = std::abs(B);
        if (!std::isfinite(mod) || !std::isfinite(B.real()) || !std::isfinite(B.imag())) {
            envelope = 0.0;
            return 0.0;
        }
        double a = std::arg(B);
        a += 2.0 * M_PI * std::round((phase - a) / (2.0 * M_PI));
        phase = a;
        envelope = 1.0 / (std::sqrt(mod) * theta);
        return std::sin(0.5 * r * theta - 0.5 * phase) * envelope;
    };

    const auto& rule = detail::sorted_gauss10();
    double total = 0.0;
    double theta = 0.0;
    for (;;) {
        const double h = detail::imhof_panel_width(theta);
        const double mid = theta + 0.5 * h;
        double acc = 0.0, env = 0.0;
        for (const auto& [node, w] : rule) {
            double e = 0.0;
            acc += w * integrand(mid + 0.5 * h * node, e);
            env = e;
        }
        total += 0.5 * h * acc;
        theta += h;
        if (theta > 10.0 && 4.0 * env < spec.abs_tol / 10.0) break;
        if (theta > spec.theta_cap) throw QuadratureError("imhof_cdf: integrand did not decay below tolerance");
    }
    return std::clamp(0.5 + total / M_PI, 0.0, 1.0);
}

}  // namespace panelur
