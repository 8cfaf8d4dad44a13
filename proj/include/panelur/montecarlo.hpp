#pragma once

// Seeded simulation engine. Every replication and unit draws from its own
// mt19937_64 stream keyed by splitmix64(seed, rep, unit), so results do not
// depend on the number of worker threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "panelur/errors.hpp"
#include "panelur/estimators.hpp"
#include "panelur/fredholm.hpp"
#include "panelur/panel.hpp"
#include "panelur/power.hpp"

namespace panelur {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    const std::uint64_t k = splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    return std::mt19937_64(seq);
}

inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// out[i] = f(i) for i < n, spread over worker threads
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, int threads, F&& f) {
    std::vector<R> out(n);
    const int workers = static_cast<int>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

struct SimulationSpec {
    int n_units = 100;
    int n_periods = 100;
    DeterministicCase case_ = DeterministicCase::None;
    CDistribution c_dist = CDistribution::point_mass(0.0);
    double alpha_rate = 0.5;
    bool effects = true;  // add b0 (intercept case) and b0 + b1 t (trend case)
    std::uint64_t seed = 1;
    int reps = 2000;
    int threads = 0;  // 0 = hardware concurrency
    SigmaDivisor divisor = SigmaDivisor::DegreesOfFreedom;

    void validate() const {
        if (n_units < 1) throw InvalidArgument("simulation needs N >= 1");
        if (n_periods < 4) throw InvalidArgument("simulation needs T >= 4");
        if (reps < 1) throw InvalidArgument("simulation needs reps >= 1");
        if (!(alpha_rate > 0.0)) throw InvalidArgument("alpha_rate must be positive");
        c_dist.validate();
    }
};

// alpha = 1/4 for the trend case, 1/2 otherwise
inline double default_alpha(DeterministicCase cs) { return cs == DeterministicCase::InterceptTrend ? 0.25 : 0.5; }

inline void simulate_unit(const SimulationSpec& spec, std::uint64_t rep, std::uint64_t unit, std::span<double> z) {
    auto rng = stream_rng(spec.seed, rep, unit);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> var_dist(0.5, 1.5);
    const double c = spec.c_dist.sample(rng);
    const double sigma = std::sqrt(var_dist(rng));
    const double b0 = gauss(rng);
    const double b1 = gauss(rng);
    const double rho = 1.0 - c / (std::pow(static_cast<double>(spec.n_units), spec.alpha_rate) * spec.n_periods);
    const bool add0 = spec.effects && spec.case_ != DeterministicCase::None;
    const bool add1 = spec.effects && spec.case_ == DeterministicCase::InterceptTrend;
    double y = 0.0;
    for (int t = 0; t <= spec.n_periods; ++t) {
        if (t > 0) y = rho * y + sigma * gauss(rng);
        z[t] = y + (add0 ? b0 : 0.0) + (add1 ? b1 * t : 0.0);
    }
}

inline PanelDataset simulate_panel(const SimulationSpec& spec, int rep_index) {
    spec.validate();
    if (rep_index < 0 || rep_index >= spec.reps) throw InvalidArgument("rep_index out of range");
    PanelDataset p(spec.n_units, spec.n_periods);
    for (int i = 0; i < spec.n_units; ++i) simulate_unit(spec, rep_index, i, p.unit(i));
    return p;
}

// statistic of `v` on replication `rep`, without materialising the panel
inline double simulated_statistic(const SimulationSpec& spec, TestVariant v, int rep) {
    const auto cs = variant_case(v);
    std::vector<double> z(spec.n_periods + 1);
    std::vector<UnitRegression> units;
    units.reserve(spec.n_units);
    for (int i = 0; i < spec.n_units; ++i) {
        simulate_unit(spec, rep, i, z);
        units.push_back(with_unit_index(i, [&] { return unit_ols(z, cs, spec.divisor); }));
    }
    return is_ips(v) ? ips_from_units(cs, units) : llc_from_units(v, units, spec.n_periods);
}

struct RejectionReport {
    TestVariant variant{};
    double level = 0.05;
    double rate = 0;
    double mc_std_err = 0;
    int reps = 0;
    std::uint64_t seed = 0;
};

inline std::vector<double> simulated_statistics(const SimulationSpec& spec, TestVariant v) {
    spec.validate();
    return parallel_map<double>(spec.reps, spec.threads, [&](std::size_t r) {
        return simulated_statistic(spec, v, static_cast<int>(r));
    });
}

inline RejectionReport rejection_rate(const SimulationSpec& spec, TestVariant v, double level) {
    check_level(level);
    const auto stats = simulated_statistics(spec, v);
    const bool left = variant_tail(v) == Tail::Left;
    const double crit = left ? normal_quantile(level) : normal_quantile(1.0 - level);
    long long hits = 0;
    for (double s : stats) hits += left ? (s < crit) : (s > crit);
    RejectionReport r;
    r.variant = v;
    r.level = level;
    r.reps = spec.reps;
    r.seed = spec.seed;
    r.rate = static_cast<double>(hits) / spec.reps;
    r.mc_std_err = std::sqrt(r.rate * (1.0 - r.rate) / spec.reps);
    return r;
}

struct Table2Cell {
    int N;
    int T;
    CDistribution c_dist;
    TestVariant variant;
    RejectionReport report;
};

inline constexpr std::array<TestVariant, 3> kTable2Variants = {TestVariant::IPS_Z, TestVariant::IPS_Zmu,
                                                                TestVariant::IPS_Ztau};

inline std::vector<Table2Cell> replicate_table2(int reps, std::uint64_t seed, const std::vector<int>& Ns = {25, 100, 1000},
                                                const std::vector<int>& Ts = {50, 100, 250}, int threads = 0,
                                                double level = 0.05) {
    std::vector<Table2Cell> out;
    for (int N : Ns)
        for (const auto& d : table_distributions())
            for (auto v : kTable2Variants)
                for (int T : Ts) {
                    SimulationSpec s;
                    s.n_units = N;
                    s.n_periods = T;
                    s.case_ = variant_case(v);
                    s.c_dist = d;
                    s.alpha_rate = default_alpha(s.case_);
                    s.seed = seed;
                    s.reps = reps;
                    s.threads = threads;
                    out.push_back({N, T, d, v, rejection_rate(s, v, level)});
                }
    return out;
}

// Brownian functionals on an Euler grid: Ito (left-point) sums for stochastic
// integrals, trapezoid rule for time integrals
enum class BrownianFunctional {
    A,
    B1,
    B4,
    A_12B5sq,
    B1_12B6B8,
    B4_12B5B6,
    B10_12B9B8,
    B3_12B6sq,
    B7_12B5B9,
    U_none,
    V_none,
    U_intercept,
    V_intercept,
    U_trend,
    V_trend,
    t_none,
    t_intercept,
    t_trend,
};

inline constexpr int kBrownianCount = 18;

inline const char* brownian_name(BrownianFunctional f) {
    static const char* names[kBrownianCount] = {
        "A",         "B1",         "B4",      "A-12B5^2", "B1-12B6B8", "B4-12B5B6",
        "B10-12B9B8", "B3-12B6^2", "B7-12B5B9", "U-none", "V-none",    "U-intercept",
        "V-intercept", "U-trend",   "V-trend",  "t-none", "t-intercept", "t-trend"};
    return names[static_cast<int>(f)];
}

inline BrownianFunctional parse_brownian(const std::string& s) {
    for (int i = 0; i < kBrownianCount; ++i)
        if (s == brownian_name(static_cast<BrownianFunctional>(i))) return static_cast<BrownianFunctional>(i);
    throw InvalidArgument("unknown Brownian functional '" + s + "'");
}

using BrownianSample = std::array<double, kBrownianCount>;

inline BrownianSample brownian_path_functionals(std::mt19937_64& rng, int steps) {
    const int n = steps;
    const double h = 1.0 / n;
    const double sh = std::sqrt(h);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> W(n + 1), dW(n + 1), I(n + 1), J(n + 1);
    W[0] = I[0] = J[0] = 0.0;
    for (int k = 1; k <= n; ++k) {
        dW[k] = sh * gauss(rng);
        W[k] = W[k - 1] + dW[k];
        I[k] = I[k - 1] + 0.5 * h * (W[k - 1] + W[k]);
        J[k] = J[k - 1] + 0.5 * h * (I[k - 1] + I[k]);
    }
    auto trap = [&](auto&& f) {
        double s = 0.5 * (f(0) + f(n));
        for (int k = 1; k < n; ++k) s += f(k);
        return s * h;
    };
    auto ito = [&](auto&& f) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k) s += f(k - 1) * dW[k];
        return s;
    };
    auto r = [&](int k) { return k * h; };
    const double mW = trap([&](int k) { return W[k]; });
    const double mI = trap([&](int k) { return I[k]; });
    const double mJ = trap([&](int k) { return J[k]; });
    const double mrW = trap([&](int k) { return (r(k) - 0.5) * W[k]; });
    auto Wm = [&](int k) { return W[k] - mW; };
    auto G = [&](int k) { return I[k] - mI; };
    auto H = [&](int k) { return J[k] - mJ; };
    // detrended W: residual of W on (1, r - 1/2)
    const double slope = 12.0 * mrW;
    auto Wt = [&](int k) { return W[k] - mW - slope * (r(k) - 0.5); };

    const double A = trap([&](int k) { return Wm(k) * Wm(k); });
    const double B1 = ito(G);
    const double B3 = trap([&](int k) { return G(k) * G(k); });
    const double B4 = trap([&](int k) { return Wm(k) * G(k); });
    const double B5 = trap([&](int k) { return (r(k) - 0.5) * Wm(k); });
    const double B6 = trap([&](int k) { return (r(k) - 0.5) * G(k); });
    const double B7 = trap([&](int k) { return Wm(k) * H(k); });
    const double B8 = ito([&](int k) { return r(k) - 0.5; });
    const double B9 = trap([&](int k) { return (r(k) - 0.5) * H(k); });
    const double B10 = ito(H);
    const double U1 = ito([&](int k) { return W[k]; });
    const double V1 = trap([&](int k) { return W[k] * W[k]; });
    const double U2 = ito(Wm);
    const double U3 = ito(Wt);
    const double V3 = trap([&](int k) { return Wt(k) * Wt(k); });

    return {A,
            B1,
            B4,
            A - 12.0 * B5 * B5,
            B1 - 12.0 * B6 * B8,
            B4 - 12.0 * B5 * B6,
            B10 - 12.0 * B9 * B8,
            B3 - 12.0 * B6 * B6,
            B7 - 12.0 * B5 * B9,
            U1,
            V1,
            U2,
            A,
            U3,
            V3,
            U1 / std::sqrt(V1),
            U2 / std::sqrt(A),
            U3 / std::sqrt(V3)};
}

struct OracleEstimate {
    double mean = 0;
    double std_err = 0;
};

// means and standard errors of every functional from one set of paths
inline std::array<OracleEstimate, kBrownianCount> brownian_oracle_all(int paths, int steps, std::uint64_t seed,
                                                                      int threads = 0) {
    if (paths < 2 || steps < 2) throw InvalidArgument("brownian oracle needs paths >= 2 and steps >= 2");
    const auto samples = parallel_map<BrownianSample>(paths, threads, [&](std::size_t p) {
        auto rng = stream_rng(seed, p, 0xb70);
        return brownian_path_functionals(rng, steps);
    });
    std::array<OracleEstimate, kBrownianCount> out;
    for (int f = 0; f < kBrownianCount; ++f) {
        double s = 0, s2 = 0;
        for (const auto& x : samples) s += x[f];
        const double mean = s / paths;
        for (const auto& x : samples) s2 += (x[f] - mean) * (x[f] - mean);
        out[f] = {mean, std::sqrt(s2 / (paths - 1) / paths)};
    }
    return out;
}

inline OracleEstimate brownian_oracle(BrownianFunctional f, int paths, int steps, std::uint64_t seed, int threads = 0) {
    if (paths < 10000 || steps < 1000) throw InvalidArgument("brownian_oracle needs paths >= 1e4 and steps >= 1e3");
    return brownian_oracle_all(paths, steps, seed, threads)[static_cast<int>(f)];
}

// simulated T(rho_hat - 1) of a driftless random walk, one value per path
inline std::vector<double> simulate_df_coefficient(DeterministicCase cs, int paths, int T, std::uint64_t seed,
                                                   int threads = 0) {
    if (paths < 1 || T < 4) throw InvalidArgument("simulate_df_coefficient needs paths >= 1 and T >= 4");
    return parallel_map<double>(paths, threads, [&](std::size_t p) {
        auto rng = stream_rng(seed, p, 0xdf);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> z(T + 1, 0.0);
        for (int t = 1; t <= T; ++t) z[t] = z[t - 1] + gauss(rng);
        return T * (unit_ols(z, cs).rho_hat - 1.0);
    });
}

// sup |F(x) - F_n(x)| over the sample, checking both sides of each jump;
// F is evaluated at `grid` empirical quantiles to bound the cost
template <class Cdf>
double kolmogorov_distance(std::vector<double> sample, Cdf&& F, int grid = 0) {
    if (sample.empty()) throw EmptyRun("kolmogorov_distance: empty sample");
    std::sort(sample.begin(), sample.end());
    const std::size_t n = sample.size();
    const std::size_t m = grid > 0 ? std::min<std::size_t>(grid, n) : n;
    double d = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t i = m == n ? j : (j * (n - 1)) / (m - 1);
        const double f = F(sample[i]);
        const auto hi = std::upper_bound(sample.begin(), sample.end(), sample[i]) - sample.begin();
        const auto lo = std::lower_bound(sample.begin(), sample.end(), sample[i]) - sample.begin();
        d = std::max({d, std::abs(f - static_cast<double>(hi) / n), std::abs(f - static_cast<double>(lo) / n)});
    }
    return d;
}

}  // namespace panelur
