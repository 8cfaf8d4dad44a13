#pragma once

// One-term Edgeworth expansions of the LLC and IPS statistics. Under the
// local alternative the CDF is that of the drift-centred statistic.

#include <algorithm>
#include <array>
#include <cmath>

#include "panelur/errors.hpp"
#include "panelur/normal.hpp"
#include "panelur/power.hpp"
#include "panelur/sawa.hpp"

namespace panelur {

enum class Hypothesis { Null, Local };

struct EdgeworthQuery {
    TestVariant variant = TestVariant::LLC_t1;
    double x = 0.0;
    long long N = 1;
    CMomentSummary moments{};
    Hypothesis hypothesis = Hypothesis::Null;

    void validate() const {
        if (N < 1) throw InvalidArgument("Edgeworth expansion needs N >= 1");
        if (!std::isfinite(x)) throw InvalidArgument("Edgeworth evaluation point must be finite");
        moments.validate();
        if (hypothesis == Hypothesis::Null && !moments.is_zero())
            throw InvalidArgument("null hypothesis requires all c moments to be zero");
    }
};

// F(x) = Phi(x) + N^{-1/2}(a + b He2(x)) phi(x) + N^{-1}(c + d He2(x)) phi(x)
struct EdgeworthTerms {
    double a = 0, b = 0;  // null, N^{-1/2}
    double c = 0, d = 0;  // local, N^{-1}
};

inline EdgeworthTerms llc_edgeworth_terms(TestVariant v, const CMomentSummary& m) {
    const double r2 = std::sqrt(2.0), r30 = std::sqrt(30.0), r1020 = std::sqrt(1020.0);
    const double s277 = std::sqrt(105.0 / 277.0), s193 = std::sqrt(105.0 / 193.0);
    switch (v) {
        case TestVariant::LLC_t1:
            return {r2 / 3.0, 0.0, -r2 * m.cbar / 12.0, 0.0};
        case TestVariant::LLC_t21:
            return {3.0 * r30 / 40.0, -3.0 * r30 / 560.0, -3.0 * r30 * m.cbar / 160.0,
                    -11.0 * r30 * m.cbar / 17920.0};
        case TestVariant::LLC_t22:
            return {r1020 / 85.0, -27.0 * r1020 / 20230.0, -3.0 * r1020 * m.cbar / 680.0,
                    13.0 * r1020 * m.cbar / 20230.0};
        case TestVariant::LLC_t31:
            return {33.0 / 56.0 * s277, -491.0 / 15512.0 * s277, -59.0 / 3136.0 * s277 * m.c2bar,
                    118445.0 / 9555392.0 * s277 * m.c2bar};
        case TestVariant::LLC_t32:
            return {11.0 / 28.0 * s193, -397.0 / 5404.0 * s193, -151.0 / 9408.0 * s193 * m.c2bar,
                    84829.0 / 6657728.0 * s193 * m.c2bar};
        default:
            throw UnsupportedVariant(std::string("no Edgeworth expansion for ") + variant_name(v));
    }
}

inline double edgeworth_cdf(const EdgeworthTerms& t, double x, long long N, bool local) {
    const double he2 = x * x - 1.0;
    const double phi = normal_pdf(x);
    const double n = static_cast<double>(N);
    double f = normal_cdf(x) + (t.a + t.b * he2) * phi / std::sqrt(n);
    if (local) f += (t.c + t.d * he2) * phi / n;
    return std::clamp(f, 0.0, 1.0);
}

inline double llc_edgeworth(const EdgeworthQuery& q) {
    q.validate();
    if (is_ips(q.variant)) throw UnsupportedVariant("llc_edgeworth needs an LLC variant");
    const auto t = llc_edgeworth_terms(q.variant, q.moments);
    return edgeworth_cdf(t, q.x, q.N, q.hypothesis == Hypothesis::Local);
}

// skewness lambda/6 of t0 and the coefficient of cbar (or c2bar, trend case)
// in the N^{-1}(x^2-1)phi(x) term under the local alternative
struct IpsEdgeworthCoefficients {
    std::array<double, 3> null_coef{};
    std::array<double, 3> local_coef{};
};

inline IpsEdgeworthCoefficients compute_ips_edgeworth_coefficients(const QuadratureSpec& spec = {}) {
    IpsEdgeworthCoefficients r;
    const DeterministicCase cases[3] = {DeterministicCase::None, DeterministicCase::Intercept,
                                        DeterministicCase::InterceptTrend};
    for (int i = 0; i < 3; ++i) {
        const auto j = local_t_moment_jets<2>(cases[i], 0.0, spec);
        const Jet<2> m1 = j[0], m2 = j[1], m3 = j[2];
        const Jet<2> k3 = m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1;
        const double var = m2[0] - m1[0] * m1[0];
        const double v32 = var * std::sqrt(var);
        const int order = i == 2 ? 2 : 1;
        r.null_coef[i] = k3[0] / (6.0 * v32);
        r.local_coef[i] = -k3[order] / (6.0 * v32);
    }
    return r;
}

inline const IpsEdgeworthCoefficients& ips_edgeworth_coefficients() {
    static const IpsEdgeworthCoefficients k = compute_ips_edgeworth_coefficients();
    return k;
}

inline double ips_edgeworth(const EdgeworthQuery& q) {
    q.validate();
    if (!is_ips(q.variant)) throw UnsupportedVariant("ips_edgeworth needs an IPS variant");
    const int i = static_cast<int>(variant_case(q.variant));
    const auto& k = ips_edgeworth_coefficients();
    EdgeworthTerms t;
    t.b = -k.null_coef[i];
    const double cpow = i == 2 ? q.moments.c2bar : q.moments.cbar;
    t.d = k.local_coef[i] * cpow;
    return edgeworth_cdf(t, q.x, q.N, q.hypothesis == Hypothesis::Local);
}

inline double edgeworth(const EdgeworthQuery& q) { return is_ips(q.variant) ? ips_edgeworth(q) : llc_edgeworth(q); }

}  // namespace panelur
