#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "panelur/power.hpp"

using namespace panelur;
using Catch::Approx;

namespace {

// rows U[0,1], U[0,8], chi2(1), chi2(6); columns t1 t21 t22 t31 t32 Z Zmu Ztau
const double kPublishedPower[4][8] = {
    {0.0983, 0.0703, 0.0792, 0.0515, 0.0518, 0.0888, 0.0661, 0.0513},
    {0.8817, 0.3914, 0.5924, 0.2398, 0.3012, 0.7666, 0.2982, 0.2025},
    {0.1741, 0.0963, 0.1199, 0.0651, 0.0685, 0.1464, 0.0859, 0.0629},
    {0.9953, 0.6587, 0.8796, 0.6794, 0.8116, 0.9722, 0.5112, 0.5723},
};

CMomentSummary point(double c) { return c_moments(CDistribution::point_mass(c)); }

}  // namespace

TEST_CASE("theoretical power table") {
    const auto t = power_table(0.05);
    REQUIRE(t.rows.size() == 4);
    REQUIRE(t.columns.size() == 8);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 8; ++c) {
            INFO(t.rows[r].label() << " " << variant_name(t.columns[c]));
            CHECK(t.power[r][c] == Approx(kPublishedPower[r][c]).margin(5e-4));
        }
}

TEST_CASE("power spot values") {
    CHECK(local_power(TestVariant::LLC_t1, c_moments(CDistribution::uniform(0, 8)), 0.05) == Approx(0.8817).margin(5e-4));
    CHECK(local_power(TestVariant::IPS_Z, c_moments(CDistribution::uniform(0, 1)), 0.05) == Approx(0.0888).margin(5e-4));
    CHECK(local_power(TestVariant::IPS_Ztau, c_moments(CDistribution::chi_square(6)), 0.05) ==
          Approx(0.5723).margin(5e-4));
}

TEST_CASE("drift values") {
    CHECK(drift(TestVariant::LLC_t1, point(0)) == 0.0);
    CHECK(drift(TestVariant::IPS_Z, point(1)) == Approx(-0.58198749 / 0.98111424).margin(1e-7));
    CHECK(drift(TestVariant::IPS_Z, point(1)) == Approx(-0.593187).margin(1e-6));
    CHECK(drift(TestVariant::LLC_t21, point(6)) == Approx(-2.05396).margin(1e-5));
    CHECK(drift(TestVariant::IPS_Z, point(1), ips_literal_constants()) ==
          Approx(drift(TestVariant::IPS_Z, point(1))).margin(1e-7));
    CHECK(ips_constants().computed);
}

TEST_CASE("recomputed IPS constants agree with the literals") {
    const auto lit = ips_literal_constants();
    const auto& k = ips_constants();
    for (int i = 0; i < 3; ++i) {
        CHECK(k.a[i] == Approx(lit.a[i]).margin(1e-7));
        CHECK(k.sd[i] == Approx(lit.sd[i]).margin(1e-7));
    }
}

TEST_CASE("power curve") {
    const auto ips = power_curve(TestVariant::IPS_Zmu, {0.0, 8.0}, true);
    CHECK(ips[0].power == Approx(0.05).margin(1e-12));
    CHECK(ips[1].power == Approx(normal_cdf(-1.6448536269514722 + 0.23431142 / 0.84025086 * 8)).margin(1e-6));
    CHECK(ips[1].power == Approx(0.7211).margin(1e-3));
    CHECK(power_curve(TestVariant::LLC_t1, {4.0}, true)[0].power == Approx(0.8817).margin(5e-4));
    // heterogeneous U[0, 2c] has the same mean, larger second moment
    const auto het = power_curve(TestVariant::LLC_t31, {3.0}, false);
    const auto hom = power_curve(TestVariant::LLC_t31, {3.0}, true);
    CHECK(het[0].power > hom[0].power);
    CHECK(power_curve(TestVariant::LLC_t1, {3.0}, false)[0].power ==
          Approx(power_curve(TestVariant::LLC_t1, {3.0}, true)[0].power).margin(1e-15));
    CHECK_THROWS_AS(power_curve(TestVariant::LLC_t1, {-1.0}, true), InvalidArgument);
}

TEST_CASE("size anchor") {
    for (auto v : kAllVariants)
        for (double a : {0.01, 0.05, 0.10}) CHECK(std::abs(local_power(v, CMomentSummary{}, a) - a) < 1e-12);
}

TEST_CASE("left-tail power is monotone in c") {
    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back(0.1 * i);
    for (auto v : kAllVariants) {
        if (variant_tail(v) != Tail::Left) continue;
        const auto curve = power_curve(v, grid, true);
        for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].power >= curve[i - 1].power);
    }
}

TEST_CASE("right-tail variants gain power with c") {
    for (auto v : {TestVariant::LLC_t23, TestVariant::LLC_t33}) {
        CHECK(variant_tail(v) == Tail::Right);
        CHECK(drift(v, point(2)) > 0);
        CHECK(local_power(v, point(2), 0.05) > 0.05);
        CHECK(local_power(v, point(4), 0.05) > local_power(v, point(2), 0.05));
    }
}

TEST_CASE("LLC drifts dominate the matching IPS drifts") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto d = i % 2 ? CDistribution::uniform(0, 10 * std::generate_canonical<double, 53>(rng) + 0.01)
                             : CDistribution::chi_square(1 + i % 9);
        const auto m = c_moments(d);
        CHECK(std::abs(drift(TestVariant::LLC_t1, m)) >= std::abs(drift(TestVariant::IPS_Z, m)));
        CHECK(std::abs(drift(TestVariant::LLC_t22, m)) >= std::abs(drift(TestVariant::IPS_Zmu, m)));
        CHECK(std::abs(drift(TestVariant::LLC_t32, m)) >= std::abs(drift(TestVariant::IPS_Ztau, m)));
    }
}

TEST_CASE("c distribution moments") {
    const auto u = c_moments(CDistribution::uniform(0, 1));
    CHECK(u.cbar == Approx(0.5));
    CHECK(u.c2bar == Approx(1.0 / 3));
    CHECK(u.c3bar == Approx(0.25));
    CHECK(u.c4bar == Approx(0.2));
    const auto p = point(2);
    CHECK(p.cbar == 2);
    CHECK(p.c2bar == 4);
    CHECK(p.c3bar == 8);
    CHECK(p.c4bar == 16);
    const auto c1 = c_moments(CDistribution::chi_square(1));
    CHECK(c1.cbar == 1);
    CHECK(c1.c2bar == 3);
}

TEST_CASE("chi-square moments agree with sample moments") {
    std::mt19937_64 rng(2024);
    for (int k : {1, 6}) {
        const auto d = CDistribution::chi_square(k);
        const auto m = c_moments(d);
        const int n = 10'000'000;
        double s1 = 0, s2 = 0, s4 = 0;
        for (int i = 0; i < n; ++i) {
            const double x = d.sample(rng);
            s1 += x;
            s2 += x * x;
            s4 += x * x * x * x;
        }
        s1 /= n;
        s2 /= n;
        s4 /= n;
        const double se1 = std::sqrt((m.c2bar - m.cbar * m.cbar) / n);
        const double se2 = std::sqrt((m.c4bar - m.c2bar * m.c2bar) / n);
        CHECK(std::abs(s1 - m.cbar) < 4 * se1);
        CHECK(std::abs(s2 - m.c2bar) < 4 * se2);
    }
}

TEST_CASE("distribution parsing") {
    CHECK(parse_c_distribution("U[0,8]").label() == "U[0,8]");
    CHECK(parse_c_distribution("chi2(6)").label() == "chi2(6)");
    CHECK(parse_c_distribution("2.5").label() == "c=2.5");
    CHECK_THROWS_AS(parse_c_distribution("U[3,1]"), InvalidArgument);
    CHECK_THROWS_AS(parse_c_distribution("chi2(0)"), InvalidArgument);
    CHECK_THROWS_AS(parse_c_distribution("normal"), InvalidArgument);
    CHECK_THROWS_AS(parse_c_distribution("-1"), InvalidArgument);
    CHECK(parse_variant("ips-zmu") == TestVariant::IPS_Zmu);
    CHECK_THROWS_AS(parse_variant("llc-t9"), InvalidArgument);
    for (auto v : kAllVariants) CHECK(parse_variant(variant_name(v)) == v);
}

TEST_CASE("invalid moments and levels are rejected") {
    CHECK_THROWS_AS(local_power(TestVariant::LLC_t1, CMomentSummary{2, 1, 8, 16}, 0.05), InvalidArgument);
    CHECK_THROWS_AS(local_power(TestVariant::LLC_t1, CMomentSummary{-1, 1, 1, 1}, 0.05), InvalidArgument);
    CHECK_THROWS_AS(local_power(TestVariant::LLC_t1, point(1), 0.0), InvalidArgument);
    CHECK_THROWS_AS(local_power(TestVariant::LLC_t1, point(1), 1.0), InvalidArgument);
    CHECK_THROWS_AS(power_table(1.5), InvalidArgument);
}
