#include <catch_amalgamated.hpp>

#include <cmath>

#include "panelur/diagnostics.hpp"
#include "panelur/edgeworth.hpp"

using namespace panelur;
using Catch::Approx;

namespace {

const TestVariant kExpandable[] = {TestVariant::LLC_t1,  TestVariant::LLC_t21, TestVariant::LLC_t22,
                                   TestVariant::LLC_t31, TestVariant::LLC_t32, TestVariant::IPS_Z,
                                   TestVariant::IPS_Zmu, TestVariant::IPS_Ztau};

EdgeworthQuery query(TestVariant v, double x, long long N) {
    EdgeworthQuery q;
    q.variant = v;
    q.x = x;
    q.N = N;
    return q;
}

EdgeworthQuery local_query(TestVariant v, double x, long long N, const CMomentSummary& m) {
    auto q = query(v, x, N);
    q.hypothesis = Hypothesis::Local;
    q.moments = m;
    return q;
}

}  // namespace

TEST_CASE("LLC expansion spot values") {
    CHECK(edgeworth(query(TestVariant::LLC_t1, 0.0, 1'000'000'000'000LL)) == Approx(0.5).margin(1e-6));
    CHECK(edgeworth(query(TestVariant::LLC_t1, 0.0, 100)) ==
          Approx(0.5 + std::sqrt(2.0) / 3.0 * 0.1 * normal_pdf(0.0)).margin(1e-12));
    CHECK(edgeworth(query(TestVariant::LLC_t1, 0.0, 100)) == Approx(0.51881).margin(1e-5));
    CHECK(edgeworth(query(TestVariant::LLC_t21, 1.0, 25)) ==
          Approx(normal_cdf(1.0) + 3.0 * std::sqrt(30.0) / 40.0 * 0.2 * normal_pdf(1.0)).margin(1e-12));
}

TEST_CASE("IPS skewness coefficients") {
    const auto& k = ips_edgeworth_coefficients();
    CHECK(k.null_coef[0] == Approx(0.0416).margin(5e-4));
    CHECK(k.null_coef[1] == Approx(0.0364).margin(5e-4));
    CHECK(k.null_coef[2] == Approx(0.0095).margin(5e-4));
    CHECK(k.local_coef[0] == Approx(0.0672).margin(5e-4));
    CHECK(k.local_coef[1] == Approx(0.0354).margin(5e-4));
    CHECK(k.local_coef[2] == Approx(0.0058).margin(5e-4));
    const auto& t = null_moment_table();
    CHECK(k.null_coef[0] == Approx(t[DeterministicCase::None].skewness / 6).margin(1e-12));
}

TEST_CASE("IPS null expansion") {
    const double x = 0.3;
    const long long N = 50;
    const double lam = ips_edgeworth_coefficients().null_coef[1];
    CHECK(edgeworth(query(TestVariant::IPS_Zmu, x, N)) ==
          Approx(normal_cdf(x) - lam / std::sqrt(50.0) * (x * x - 1) * normal_pdf(x)).margin(1e-14));
}

TEST_CASE("IPS corrections vanish at x = +-1") {
    for (auto v : {TestVariant::IPS_Z, TestVariant::IPS_Zmu, TestVariant::IPS_Ztau})
        for (long long N : {1LL, 10LL, 1000LL})
            for (double x : {-1.0, 1.0}) {
                CHECK(edgeworth(query(v, x, N)) == normal_cdf(x));
                CHECK(edgeworth(local_query(v, x, N, CMomentSummary{2, 5, 14, 40})) == normal_cdf(x));
            }
}

TEST_CASE("expansions tend to the normal CDF") {
    for (auto v : kExpandable)
        for (double x = -4; x <= 4; x += 0.25) {
            CHECK(std::abs(edgeworth(query(v, x, 100'000'000)) - normal_cdf(x)) < 1e-3);
            CHECK(std::abs(edgeworth(local_query(v, x, 100'000'000, CMomentSummary{1, 2, 5, 15})) - normal_cdf(x)) <
                  1e-3);
        }
}

TEST_CASE("local expansion with zero moments is the null expansion") {
    for (auto v : kExpandable)
        for (double x : {-2.0, -0.5, 0.0, 0.7, 2.5})
            CHECK(edgeworth(local_query(v, x, 30, CMomentSummary{})) == edgeworth(query(v, x, 30)));
}

TEST_CASE("local terms scale with the c moments") {
    const CMomentSummary m{1.5, 3.0, 7.0, 20.0};
    const auto t = llc_edgeworth_terms(TestVariant::LLC_t1, m);
    CHECK(t.c == Approx(-std::sqrt(2.0) * 1.5 / 12.0));
    const auto t31 = llc_edgeworth_terms(TestVariant::LLC_t31, m);
    const auto t31z = llc_edgeworth_terms(TestVariant::LLC_t31, CMomentSummary{});
    CHECK(t31z.c == 0.0);
    CHECK(t31z.d == 0.0);
    CHECK(t31.d == Approx(118445.0 / 9555392.0 * std::sqrt(105.0 / 277.0) * 3.0));
    CHECK(t31.a == t31z.a);
    CHECK(t31.b == t31z.b);
}

TEST_CASE("expansion output is a probability") {
    for (auto v : kExpandable)
        for (double x = -8; x <= 8; x += 0.5) {
            const double f = edgeworth(query(v, x, 1));
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
        }
}

TEST_CASE("invalid queries") {
    CHECK_THROWS_AS(edgeworth(query(TestVariant::LLC_t23, 0.0, 10)), UnsupportedVariant);
    CHECK_THROWS_AS(edgeworth(query(TestVariant::LLC_t33, 0.0, 10)), UnsupportedVariant);
    CHECK_THROWS_AS(edgeworth(query(TestVariant::LLC_t1, 0.0, 0)), InvalidArgument);
    CHECK_THROWS_AS(edgeworth(query(TestVariant::LLC_t1, NAN, 10)), InvalidArgument);
    auto q = query(TestVariant::IPS_Z, 0.0, 10);
    q.moments = CMomentSummary{1, 1, 1, 1};
    CHECK_THROWS_AS(edgeworth(q), InvalidArgument);
    CHECK_THROWS_AS(llc_edgeworth(query(TestVariant::IPS_Z, 0.0, 10)), UnsupportedVariant);
    CHECK_THROWS_AS(ips_edgeworth(query(TestVariant::LLC_t1, 0.0, 10)), UnsupportedVariant);
}

TEST_CASE("expansion against simulated statistics") {
    const auto z = edgeworth_vs_exact(TestVariant::IPS_Z, 200, 600, 31, 100);
    CHECK(z.reps == 600);
    CHECK(z.ks_edgeworth < 0.07);
    const auto t1 = edgeworth_vs_exact(TestVariant::LLC_t1, 200, 600, 32, 100);
    CHECK(t1.ks_edgeworth < 0.07);
    CHECK_THROWS_AS(edgeworth_vs_exact(TestVariant::IPS_Z, 10, 0, 1), EmptyRun);
    CHECK_THROWS_AS(edgeworth_vs_exact(TestVariant::LLC_t33, 10, 5, 1), UnsupportedVariant);
}
