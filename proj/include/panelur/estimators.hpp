#pragma once

// Per-unit Dickey-Fuller regressions over t = 2..T and the pooled LLC and
// averaged IPS statistics built from them.

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "panelur/errors.hpp"
#include "panelur/fredholm.hpp"
#include "panelur/normal.hpp"
#include "panelur/panel.hpp"
#include "panelur/power.hpp"
#include "panelur/sawa.hpp"

namespace panelur {

// Residual variance divisor: the OLS degrees of freedom (observations minus
// regressors), or T - 1 regardless of the deterministic terms.
enum class SigmaDivisor { DegreesOfFreedom, Printed };

inline const char* divisor_name(SigmaDivisor d) { return d == SigmaDivisor::Printed ? "printed" : "dof"; }

inline SigmaDivisor parse_divisor(const std::string& s) {
    if (s == "dof") return SigmaDivisor::DegreesOfFreedom;
    if (s == "printed") return SigmaDivisor::Printed;
    throw InvalidArgument("unknown sigma divisor '" + s + "' (use dof or printed)");
}

inline int deterministic_count(DeterministicCase cs) {
    return cs == DeterministicCase::None ? 0 : (cs == DeterministicCase::Intercept ? 1 : 2);
}

struct UnitRegression {
    double rho_hat = 0;
    double t_stat = 0;
    double sigma_hat = 0;
    DeterministicCase case_ = DeterministicCase::None;
    double sxx = 0;  // sum of the residualized lagged level squared
};

// Regress z_t on z_{t-1} and the deterministics, t = 2..T; the deterministic
// part is partialled out of both sides.
inline UnitRegression unit_ols(std::span<const double> z, DeterministicCase cs,
                               SigmaDivisor div = SigmaDivisor::DegreesOfFreedom) {
    const int T = static_cast<int>(z.size()) - 1;
    if (T < 4) throw InvalidArgument("unit_ols needs at least 5 observations");
    const int n = T - 1;
    double my = 0, mx = 0, by = 0, bx = 0;
    const double tbar = 0.5 * (T + 2);
    double stt = 0;
    if (cs != DeterministicCase::None) {
        for (int t = 2; t <= T; ++t) {
            my += z[t];
            mx += z[t - 1];
        }
        my /= n;
        mx /= n;
    }
    if (cs == DeterministicCase::InterceptTrend) {
        for (int t = 2; t <= T; ++t) {
            const double d = t - tbar;
            stt += d * d;
            by += d * z[t];
            bx += d * z[t - 1];
        }
        by /= stt;
        bx /= stt;
    }
    auto ry = [&](int t) { return z[t] - my - by * (t - tbar); };
    auto rx = [&](int t) { return z[t - 1] - mx - bx * (t - tbar); };
    double sxx = 0, sxy = 0, scale = 0;
    for (int t = 2; t <= T; ++t) {
        const double x = rx(t);
        sxx += x * x;
        sxy += x * ry(t);
        scale += z[t - 1] * z[t - 1];
    }
    for (int t = 0; t <= T; ++t)
        if (!std::isfinite(z[t])) throw InvalidArgument("unit_ols: non-finite value in series");
    if (!(sxx > 1e-12 * scale) || sxx == 0.0) throw DegenerateRegression("lagged level has no variation");
    const double rho = sxy / sxx;
    double rss = 0, syy = 0;
    for (int t = 2; t <= T; ++t) {
        const double e = ry(t) - rho * rx(t);
        rss += e * e;
        syy += ry(t) * ry(t);
    }
    if (!(rss > 1e-24 * (syy + scale))) throw DegenerateRegression("regression fits exactly");
    UnitRegression r;
    r.rho_hat = rho;
    const int dof = div == SigmaDivisor::Printed ? T - 1 : T - 2 - deterministic_count(cs);
    r.sigma_hat = std::sqrt(rss / dof);
    r.t_stat = (rho - 1.0) * std::sqrt(sxx) / r.sigma_hat;
    r.case_ = cs;
    r.sxx = sxx;
    return r;
}

struct TestOutcome {
    TestVariant variant{};
    double statistic = 0;
    double p_value = 0;
    std::map<double, bool> reject_at;
    int n_units = 0;
    int n_periods = 0;
};

inline TestOutcome make_outcome(TestVariant v, double stat, int N, int T) {
    TestOutcome o;
    o.variant = v;
    o.statistic = stat;
    o.p_value = variant_tail(v) == Tail::Left ? normal_cdf(stat) : 1.0 - normal_cdf(stat);
    for (double a : {0.01, 0.05, 0.10}) o.reject_at[a] = o.p_value < a;
    o.n_units = N;
    o.n_periods = T;
    return o;
}

template <class F>
auto with_unit_index(int i, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DegenerateRegression& e) {
        throw DegenerateRegression(e.what(), i);
    }
}

// pooled statistic from the per-unit regressions
inline double llc_from_units(TestVariant v, const std::vector<UnitRegression>& units, int T) {
    double S = 0, num = 0;
    for (const auto& u : units) {
        const double w = u.sxx / (u.sigma_hat * u.sigma_hat);
        S += w;
        num += (u.rho_hat - 1.0) * w;
    }
    const double delta = num / S;
    const double rs = std::sqrt(S);
    const double N = static_cast<double>(units.size());
    switch (v) {
        case TestVariant::LLC_t1: return delta * rs;
        case TestVariant::LLC_t21: return std::sqrt(5.0) / 2.0 * delta * rs + std::sqrt(15.0 * N / 8.0);
        case TestVariant::LLC_t22: return std::sqrt(10.0 / 17.0) * (delta + 3.0 / T) * rs;
        case TestVariant::LLC_t31: return std::sqrt(448.0 / 277.0) * delta * rs + std::sqrt(1680.0 * N / 277.0);
        case TestVariant::LLC_t32: return std::sqrt(112.0 / 193.0) * (delta + 15.0 / (2.0 * T)) * rs;
        default: throw UnsupportedVariant(std::string("no finite-sample statistic for ") + variant_name(v));
    }
}

inline TestOutcome llc_statistic(const PanelDataset& panel, TestVariant v,
                                 SigmaDivisor div = SigmaDivisor::DegreesOfFreedom) {
    panel.validate();
    if (is_ips(v) || v == TestVariant::LLC_t23 || v == TestVariant::LLC_t33)
        throw UnsupportedVariant(std::string("llc_statistic does not support ") + variant_name(v));
    const auto cs = variant_case(v);
    std::vector<UnitRegression> units;
    units.reserve(panel.n_units);
    for (int i = 0; i < panel.n_units; ++i)
        units.push_back(with_unit_index(i, [&] { return unit_ols(panel.unit(i), cs, div); }));
    return make_outcome(v, llc_from_units(v, units, panel.n_periods), panel.n_units, panel.n_periods);
}

inline TestVariant ips_variant(DeterministicCase cs) {
    switch (cs) {
        case DeterministicCase::None: return TestVariant::IPS_Z;
        case DeterministicCase::Intercept: return TestVariant::IPS_Zmu;
        case DeterministicCase::InterceptTrend: return TestVariant::IPS_Ztau;
    }
    return TestVariant::IPS_Z;
}

inline double ips_from_units(DeterministicCase cs, const std::vector<UnitRegression>& units) {
    const auto& m = null_moment_table()[cs];
    double s = 0;
    for (const auto& u : units) s += u.t_stat;
    const double N = static_cast<double>(units.size());
    return std::sqrt(N) * (s / N - m.E_t0) / m.sd_t0;
}

inline TestOutcome ips_statistic(const PanelDataset& panel, DeterministicCase cs,
                                 SigmaDivisor div = SigmaDivisor::DegreesOfFreedom) {
    panel.validate();
    std::vector<UnitRegression> units;
    units.reserve(panel.n_units);
    for (int i = 0; i < panel.n_units; ++i)
        units.push_back(with_unit_index(i, [&] { return unit_ols(panel.unit(i), cs, div); }));
    return make_outcome(ips_variant(cs), ips_from_units(cs, units), panel.n_units, panel.n_periods);
}

inline TestOutcome run_test(const PanelDataset& panel, TestVariant v,
                            SigmaDivisor div = SigmaDivisor::DegreesOfFreedom) {
    return is_ips(v) ? ips_statistic(panel, variant_case(v), div) : llc_statistic(panel, v, div);
}

}  // namespace panelur
