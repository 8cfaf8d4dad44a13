#pragma once

#include <cstdint>

#include "panelur/edgeworth.hpp"
#include "panelur/montecarlo.hpp"

namespace panelur {

struct EdgeworthDiagnostic {
    TestVariant variant{};
    int N = 0;
    int T = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    double ks_edgeworth = 0;  // Kolmogorov distance to the Edgeworth CDF
    double ks_normal = 0;     // and to the standard normal
};

// compares the null Edgeworth CDF with the simulated finite-N statistic
inline EdgeworthDiagnostic edgeworth_vs_exact(TestVariant v, int N, int reps, std::uint64_t seed, int T = 250,
                                              int threads = 0) {
    if (reps <= 0) throw EmptyRun("edgeworth_vs_exact: no replications requested");
    if (v == TestVariant::LLC_t23 || v == TestVariant::LLC_t33)
        throw UnsupportedVariant(std::string("no Edgeworth expansion for ") + variant_name(v));
    SimulationSpec s;
    s.n_units = N;
    s.n_periods = T;
    s.case_ = variant_case(v);
    s.c_dist = CDistribution::point_mass(0.0);
    s.alpha_rate = default_alpha(s.case_);
    s.seed = seed;
    s.reps = reps;
    s.threads = threads;
    const auto stats = simulated_statistics(s, v);
    EdgeworthDiagnostic d;
    d.variant = v;
    d.N = N;
    d.T = T;
    d.reps = reps;
    d.seed = seed;
    d.ks_edgeworth = kolmogorov_distance(stats, [&](double x) {
        EdgeworthQuery q;
        q.variant = v;
        q.x = x;
        q.N = N;
        return edgeworth(q);
    });
    d.ks_normal = kolmogorov_distance(stats, [](double x) { return normal_cdf(x); });
    return d;
}

}  // namespace panelur
