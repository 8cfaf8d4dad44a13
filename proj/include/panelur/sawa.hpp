#pragma once

// Moments of ratios U^p / V^q of the limiting functionals from their joint
// m.g.f.:  E(U^p / V^q) = 1/Gamma(q) int_0^inf v^{q-1} d^p/du^p psi(u, -v)|_{u=0} dv,
// integrated in x = sqrt(2v).

#include <array>
#include <cmath>
#include <string>

#include "panelur/errors.hpp"
#include "panelur/fredholm.hpp"
#include "panelur/kernels.hpp"
#include "panelur/quadrature.hpp"
#include "panelur/taylor.hpp"

namespace panelur {

namespace detail {

inline double gamma_fn(double q) {
    if (q == 0.5) return std::sqrt(M_PI);
    if (q == 1.0) return 1.0;
    if (q == 1.5) return 0.5 * std::sqrt(M_PI);
    return std::tgamma(q);
}

inline int case_index(DeterministicCase c) { return static_cast<int>(c); }

}  // namespace detail

// E(U^p / V^q) at scaled local parameter c, p in 0..3
inline double sawa_ratio_moment(DeterministicCase cs, int p, double q, double c, const QuadratureSpec& spec = {}) {
    if (p < 0 || p > 3) throw InvalidArgument("sawa_ratio_moment: p must be in 0..3");
    if (!(q > 0.0)) throw InvalidArgument("sawa_ratio_moment: q must be positive");
    if (!(c >= 0.0)) throw InvalidArgument("sawa_ratio_moment: c must be non-negative");
    const double scale = std::pow(2.0, 1.0 - q) / detail::gamma_fn(q);
    auto f = [&](double x) {
        const auto d = mgf_u_derivatives_z<double>(cs, c, -x * x - c * c);
        return scale * std::pow(x, 2.0 * q - 1.0) * d[p];
    };
    return integrate_semi_infinite(f, spec).value;
}

// E(V^{n - alpha}) for n in {0, 1}
inline double sawa_v_moment(DeterministicCase cs, int n, double alpha, double c, const QuadratureSpec& spec = {}) {
    if (n < 0 || n > 1) throw InvalidArgument("sawa_v_moment: n must be 0 or 1");
    if (!(alpha > 0.0)) throw InvalidArgument("sawa_v_moment: alpha must be positive");
    const double scale = (n % 2 ? -1.0 : 1.0) * std::pow(2.0, 1.0 - alpha) / detail::gamma_fn(alpha);
    auto f = [&](double x) {
        const Jet<1> pv = mgf_v_jet<1>(cs, 0.5 * x * x, c);
        return scale * std::pow(x, 2.0 * alpha - 1.0) * pv[n];
    };
    return integrate_semi_infinite(f, spec).value;
}

// E(t^k) of the limiting t-ratio U / sqrt(V) under the null
inline double null_t_moment(DeterministicCase cs, int k, const QuadratureSpec& spec = {}) {
    if (k < 1 || k > 3) throw InvalidArgument("null_t_moment: k must be 1, 2 or 3");
    return sawa_ratio_moment(cs, k, 0.5 * k, 0.0, spec);
}

struct NullMoments {
    double E_t0 = 0, sd_t0 = 0, E_t0_sq = 0, E_t0_cu = 0, skewness = 0;
};

inline NullMoments make_null_moments(double m1, double m2, double m3) {
    NullMoments r;
    r.E_t0 = m1;
    r.E_t0_sq = m2;
    r.E_t0_cu = m3;
    const double var = m2 - m1 * m1;
    if (!(var > 0.0)) throw QuadratureError("null moments give a non-positive variance");
    r.sd_t0 = std::sqrt(var);
    r.skewness = (m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1) / (var * r.sd_t0);
    return r;
}

struct NullMomentTable {
    std::array<NullMoments, 3> rows;
    const NullMoments& operator[](DeterministicCase c) const { return rows[detail::case_index(c)]; }
};

inline NullMomentTable compute_null_moment_table(const QuadratureSpec& spec = {}) {
    NullMomentTable t;
    for (auto cs : {DeterministicCase::None, DeterministicCase::Intercept, DeterministicCase::InterceptTrend})
        t.rows[detail::case_index(cs)] =
            make_null_moments(null_t_moment(cs, 1, spec), null_t_moment(cs, 2, spec), null_t_moment(cs, 3, spec));
    return t;
}

// computed once with the default quadrature
inline const NullMomentTable& null_moment_table() {
    static const NullMomentTable table = compute_null_moment_table();
    return table;
}

// published reference values of the mean and standard deviation of t0
inline NullMoments nabeya_literals(DeterministicCase cs) {
    NullMoments r;
    switch (cs) {
        case DeterministicCase::None: r.E_t0 = -0.42309565; r.sd_t0 = 0.98111424; break;
        case DeterministicCase::Intercept: r.E_t0 = -1.53296244; r.sd_t0 = 0.84025086; break;
        case DeterministicCase::InterceptTrend: r.E_t0 = -2.18135582; r.sd_t0 = 0.74990847; break;
    }
    return r;
}

// Taylor coefficients in the scaled local parameter k of E(t^m), m = 1..3,
// expanded around k = k0
template <int N>
std::array<Jet<N>, 3> local_t_moment_jets(DeterministicCase cs, double k0, const QuadratureSpec& spec = {}) {
    const double s1 = std::sqrt(2.0 / M_PI);
    std::array<Jet<N>, 3> out;
    for (int m = 1; m <= 3; ++m) {
        auto g = [&](double x) {
            const Jet<N> k = Jet<N>::variable(k0);
            const auto d = mgf_u_derivatives_z<Jet<N>>(cs, k, -x * x - k * k);
            const double w = m == 1 ? s1 : (m == 2 ? x : s1 * x * x);
            return d[m] * w;
        };
        out[m - 1] = integrate_semi_infinite(g, spec).value;
    }
    return out;
}

struct LocalMoment {
    double null_value;   // E(t0^k)
    double coefficient;  // coefficient of c^order in the local expansion
    int order;           // 1 for the none/intercept cases, 2 for the trend case
    double shifted;      // null_value + coefficient * c^order
};

// E(t^k) under the local alternative to first nonvanishing order in c
inline LocalMoment local_t_moment(DeterministicCase cs, int k, double c, const QuadratureSpec& spec = {}) {
    if (k < 1 || k > 3) throw InvalidArgument("local_t_moment: k must be 1, 2 or 3");
    if (!(c >= 0.0)) throw InvalidArgument("local_t_moment: c must be non-negative");
    const auto jets = local_t_moment_jets<2>(cs, 0.0, spec);
    LocalMoment r;
    r.null_value = jets[k - 1][0];
    r.order = cs == DeterministicCase::InterceptTrend ? 2 : 1;
    r.coefficient = jets[k - 1][r.order];
    r.shifted = c == 0.0 ? r.null_value : r.null_value + r.coefficient * std::pow(c, r.order);
    return r;
}

enum class DriftIntegral { Z, Zmu, Ztau };

// the positive constants a with E(t) = E(t0) - a c^order + ...
inline double drift_integral(DriftIntegral which, const QuadratureSpec& spec = {}) {
    const double r2pi = std::sqrt(2.0 * M_PI);
    auto f = [&](double x) {
        double g[7];
        kernel_values(-x * x, 6, g);
        switch (which) {
            case DriftIntegral::Z: {
                const double s = g[1] / g[0];  // tanh(x)/x
                return (1.0 - 2.0 * s + 3.0 * s * s) / std::sqrt(g[0]) / (2.0 * r2pi);
            }
            case DriftIntegral::Zmu:
                return (1.0 - 2.0 * g[2] / g[1]) / std::sqrt(g[1]) / (2.0 * r2pi);
            case DriftIntegral::Ztau: {
                const double f22 = 12.0 * (g[3] - 2.0 * g[4]);
                const double h = g[3] - 9.0 * g[4] + 33.0 * g[5] - 48.0 * g[6];
                return h * std::pow(f22, -1.5) / r2pi;
            }
        }
        return 0.0;
    };
    return integrate_semi_infinite(f, spec).value;
}

inline const char* drift_integral_name(DriftIntegral d) {
    switch (d) {
        case DriftIntegral::Z: return "Z";
        case DriftIntegral::Zmu: return "Zmu";
        case DriftIntegral::Ztau: return "Ztau";
    }
    return "?";
}

}  // namespace panelur
