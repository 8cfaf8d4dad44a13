#pragma once

// Local asymptotic power of the LLC and IPS variants: each statistic
// converges to N(0,1) + drift under local alternatives.

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "panelur/errors.hpp"
#include "panelur/fredholm.hpp"
#include "panelur/normal.hpp"
#include "panelur/sawa.hpp"

namespace panelur {

enum class TestVariant { LLC_t1, LLC_t21, LLC_t22, LLC_t31, LLC_t32, LLC_t23, LLC_t33, IPS_Z, IPS_Zmu, IPS_Ztau };
enum class Tail { Left, Right };

inline constexpr std::array<TestVariant, 10> kAllVariants = {
    TestVariant::LLC_t1,  TestVariant::LLC_t21, TestVariant::LLC_t22, TestVariant::LLC_t31, TestVariant::LLC_t32,
    TestVariant::LLC_t23, TestVariant::LLC_t33, TestVariant::IPS_Z,   TestVariant::IPS_Zmu, TestVariant::IPS_Ztau};

// the eight columns of the theoretical power table
inline constexpr std::array<TestVariant, 8> kTableVariants = {
    TestVariant::LLC_t1,  TestVariant::LLC_t21, TestVariant::LLC_t22, TestVariant::LLC_t31,
    TestVariant::LLC_t32, TestVariant::IPS_Z,   TestVariant::IPS_Zmu, TestVariant::IPS_Ztau};

inline const char* variant_name(TestVariant v) {
    switch (v) {
        case TestVariant::LLC_t1: return "llc-t1";
        case TestVariant::LLC_t21: return "llc-t21";
        case TestVariant::LLC_t22: return "llc-t22";
        case TestVariant::LLC_t31: return "llc-t31";
        case TestVariant::LLC_t32: return "llc-t32";
        case TestVariant::LLC_t23: return "llc-t23";
        case TestVariant::LLC_t33: return "llc-t33";
        case TestVariant::IPS_Z: return "ips-z";
        case TestVariant::IPS_Zmu: return "ips-zmu";
        case TestVariant::IPS_Ztau: return "ips-ztau";
    }
    return "?";
}

inline TestVariant parse_variant(const std::string& s) {
    for (auto v : kAllVariants)
        if (s == variant_name(v)) return v;
    throw InvalidArgument("unknown test variant '" + s + "'");
}

inline Tail variant_tail(TestVariant v) {
    return (v == TestVariant::LLC_t23 || v == TestVariant::LLC_t33) ? Tail::Right : Tail::Left;
}

inline bool is_ips(TestVariant v) {
    return v == TestVariant::IPS_Z || v == TestVariant::IPS_Zmu || v == TestVariant::IPS_Ztau;
}

inline DeterministicCase variant_case(TestVariant v) {
    switch (v) {
        case TestVariant::LLC_t1:
        case TestVariant::IPS_Z: return DeterministicCase::None;
        case TestVariant::LLC_t21:
        case TestVariant::LLC_t22:
        case TestVariant::LLC_t23:
        case TestVariant::IPS_Zmu: return DeterministicCase::Intercept;
        default: return DeterministicCase::InterceptTrend;
    }
}

struct CMomentSummary {
    double cbar = 0, c2bar = 0, c3bar = 0, c4bar = 0;

    void validate() const {
        const double tol = 1e-12 * (1.0 + c4bar);
        if (cbar < 0 || c2bar < 0 || c3bar < 0 || c4bar < 0)
            throw InvalidArgument("c moments must be non-negative");
        if (c2bar + tol < cbar * cbar || c4bar + tol < c2bar * c2bar)
            throw InvalidArgument("c moments violate Jensen's inequality");
    }
    bool is_zero() const { return cbar == 0 && c2bar == 0 && c3bar == 0 && c4bar == 0; }
};

struct CDistribution {
    enum class Kind { Uniform, ChiSquare, PointMass };
    Kind kind = Kind::PointMass;
    double a = 0, b = 0;  // uniform bounds, or chi-square df in a, or the point mass in a

    static CDistribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
    static CDistribution chi_square(double k) { return {Kind::ChiSquare, k, 0}; }
    static CDistribution point_mass(double c) { return {Kind::PointMass, c, 0}; }

    void validate() const {
        switch (kind) {
            case Kind::Uniform:
                if (!(a >= 0 && b > a)) throw InvalidArgument("uniform c distribution needs 0 <= a < b");
                break;
            case Kind::ChiSquare:
                if (!(a >= 1 && std::floor(a) == a)) throw InvalidArgument("chi-square df must be an integer >= 1");
                break;
            case Kind::PointMass:
                if (!(a >= 0)) throw InvalidArgument("point mass must be non-negative");
                break;
        }
    }

    template <class Rng>
    double sample(Rng& rng) const {
        switch (kind) {
            case Kind::Uniform: return std::uniform_real_distribution<double>(a, b)(rng);
            case Kind::ChiSquare: return std::chi_squared_distribution<double>(a)(rng);
            case Kind::PointMass: return a;
        }
        return 0.0;
    }

    std::string label() const {
        auto num = [](double v) {
            std::string s = std::to_string(v);
            s.erase(s.find_last_not_of('0') + 1);
            if (!s.empty() && s.back() == '.') s.pop_back();
            return s;
        };
        switch (kind) {
            case Kind::Uniform: return "U[" + num(a) + "," + num(b) + "]";
            case Kind::ChiSquare: return "chi2(" + num(a) + ")";
            case Kind::PointMass: return "c=" + num(a);
        }
        return "?";
    }
};

// parses "U[a,b]", "chi2(k)" or a bare number (point mass)
inline CDistribution parse_c_distribution(const std::string& s) {
    CDistribution d;
    try {
        if (s.rfind("U[", 0) == 0 && s.back() == ']') {
            const auto comma = s.find(',');
            if (comma == std::string::npos) throw InvalidArgument("");
            d = CDistribution::uniform(std::stod(s.substr(2, comma - 2)), std::stod(s.substr(comma + 1)));
        } else if (s.rfind("chi2(", 0) == 0 && s.back() == ')') {
            d = CDistribution::chi_square(std::stod(s.substr(5)));
        } else {
            std::size_t pos = 0;
            d = CDistribution::point_mass(std::stod(s, &pos));
            if (pos != s.size()) throw InvalidArgument("");
        }
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse c distribution '" + s + "' (use U[a,b], chi2(k) or a number)");
    }
    d.validate();
    return d;
}

inline CMomentSummary c_moments(const CDistribution& d) {
    d.validate();
    CMomentSummary m;
    switch (d.kind) {
        case CDistribution::Kind::Uniform: {
            auto raw = [&](int n) { return (std::pow(d.b, n + 1) - std::pow(d.a, n + 1)) / ((n + 1) * (d.b - d.a)); };
            m = {raw(1), raw(2), raw(3), raw(4)};
            break;
        }
        case CDistribution::Kind::ChiSquare: {
            const double k = d.a;
            m = {k, k * k + 2 * k, k * k * k + 6 * k * k + 8 * k, k * k * k * k + 12 * k * k * k + 44 * k * k + 48 * k};
            break;
        }
        case CDistribution::Kind::PointMass: {
            const double c = d.a;
            m = {c, c * c, c * c * c, c * c * c * c};
            break;
        }
    }
    return m;
}

// drift constants of the IPS statistics: E(t) - E(t0) ~ -a c^order, scaled by sd(t0)
struct IpsConstants {
    std::array<double, 3> a{};
    std::array<double, 3> sd{};
    bool computed = false;
};

inline IpsConstants ips_literal_constants() {
    IpsConstants k;
    k.a = {0.58198749, 0.23431142, 0.02854706};
    k.sd = {0.98111424, 0.84025086, 0.74990847};
    return k;
}

// recomputed once from the moment integrals, literals if that fails
inline const IpsConstants& ips_constants() {
    static const IpsConstants k = [] {
        try {
            IpsConstants r;
            const auto& table = null_moment_table();
            const DriftIntegral which[3] = {DriftIntegral::Z, DriftIntegral::Zmu, DriftIntegral::Ztau};
            const DeterministicCase cases[3] = {DeterministicCase::None, DeterministicCase::Intercept,
                                                DeterministicCase::InterceptTrend};
            for (int i = 0; i < 3; ++i) {
                r.a[i] = drift_integral(which[i]);
                r.sd[i] = table[cases[i]].sd_t0;
            }
            r.computed = true;
            return r;
        } catch (const Error&) {
            return ips_literal_constants();
        }
    }();
    return k;
}

// signed mean shift of the limiting normal
inline double drift(TestVariant v, const CMomentSummary& m, const IpsConstants& k = ips_constants()) {
    switch (v) {
        case TestVariant::LLC_t1: return -m.cbar / std::sqrt(2.0);
        case TestVariant::LLC_t21: return -std::sqrt(15.0 / 2.0) / 8.0 * m.cbar;
        case TestVariant::LLC_t22: return -0.5 * std::sqrt(15.0 / 17.0) * m.cbar;
        case TestVariant::LLC_t31: return -std::sqrt(105.0 / 277.0) / 14.0 * m.c2bar;
        case TestVariant::LLC_t32: return -std::sqrt(15.0) / 56.0 * std::sqrt(112.0 / 193.0) * m.c2bar;
        case TestVariant::LLC_t23: return std::sqrt(3.0) / 12.0 * m.c2bar;
        case TestVariant::LLC_t33: return std::sqrt(15.0) / 720.0 * m.c4bar;
        case TestVariant::IPS_Z: return -k.a[0] * m.cbar / k.sd[0];
        case TestVariant::IPS_Zmu: return -k.a[1] * m.cbar / k.sd[1];
        case TestVariant::IPS_Ztau: return -k.a[2] * m.c2bar / k.sd[2];
    }
    return 0.0;
}

inline double check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("level must lie in (0, 1)");
    return level;
}

inline double local_power(TestVariant v, const CMomentSummary& m, double level) {
    check_level(level);
    m.validate();
    const double d = drift(v, m);
    if (d == 0.0) return level;
    if (variant_tail(v) == Tail::Left) return normal_cdf(normal_quantile(level) - d);
    return 1.0 - normal_cdf(normal_quantile(1.0 - level) - d);
}

struct PowerTable {
    double level = 0.05;
    std::vector<CDistribution> rows;
    std::vector<TestVariant> columns;
    std::vector<std::vector<double>> power;  // [row][column]
};

inline std::vector<CDistribution> table_distributions() {
    return {CDistribution::uniform(0, 1), CDistribution::uniform(0, 8), CDistribution::chi_square(1),
            CDistribution::chi_square(6)};
}

inline PowerTable power_table(double level) {
    check_level(level);
    PowerTable t;
    t.level = level;
    t.rows = table_distributions();
    t.columns.assign(kTableVariants.begin(), kTableVariants.end());
    for (const auto& d : t.rows) {
        const auto m = c_moments(d);
        std::vector<double> row;
        for (auto v : t.columns) row.push_back(local_power(v, m, level));
        t.power.push_back(row);
    }
    return t;
}

struct PowerPoint {
    double c;
    double power;
};

// homogeneous: c_i = c for all units; otherwise c_i ~ U[0, 2c] (same mean)
inline std::vector<PowerPoint> power_curve(TestVariant v, const std::vector<double>& c_grid, bool homogeneous,
                                           double level = 0.05) {
    std::vector<PowerPoint> out;
    for (double c : c_grid) {
        if (!(c >= 0)) throw InvalidArgument("power_curve: c must be non-negative");
        const auto d = homogeneous || c == 0.0 ? CDistribution::point_mass(c) : CDistribution::uniform(0, 2 * c);
        out.push_back({c, local_power(v, c_moments(d), level)});
    }
    return out;
}

}  // namespace panelur
