#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "panelur/diagnostics.hpp"
#include "panelur/edgeworth.hpp"
#include "panelur/estimators.hpp"
#include "panelur/imhof.hpp"
#include "panelur/montecarlo.hpp"
#include "panelur/panel_csv.hpp"
#include "panelur/power.hpp"
#include "panelur/sawa.hpp"
#include "panelur/version.hpp"

using json = nlohmann::ordered_json;
using namespace panelur;

namespace {

// 9 significant digits
double sig9(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

struct Options {
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 1;
    int threads = 0;
    double level = 0.05;

    std::string input;
    std::string variant;
    std::string case_name;
    std::string divisor = "dof";

    std::string dist;
    double cbar = 0, c2bar = 0, c3bar = 0, c4bar = 0;

    double c_max = 10.0;
    int points = 101;
    bool heterogeneous = false;

    double abs_tol = 1e-10;
    double x_max = 60.0;
    int panels = 256;

    double x = 0.0;
    long long n_big = 100;
    std::string hypothesis = "null";
    int diagnostic_reps = 0;

    int n_units = 100;
    int n_periods = 100;
    double alpha = 0.0;  // 0 = by case
    int reps = 2000;
    bool no_effects = false;
    std::vector<int> table_n{25, 100, 1000};
    std::vector<int> table_t{50, 100, 250};

    int model = 1;
    double c = 0.0;
    double r = 1.0;
    double imhof_tol = 1e-7;
};

CMomentSummary resolve_moments(const Options& o, json& cfg) {
    if (!o.dist.empty()) {
        const auto d = parse_c_distribution(o.dist);
        cfg["dist"] = d.label();
        return c_moments(d);
    }
    CMomentSummary m{o.cbar, o.c2bar, o.c3bar, o.c4bar};
    m.validate();
    cfg["cbar"] = o.cbar;
    cfg["c2bar"] = o.c2bar;
    cfg["c3bar"] = o.c3bar;
    cfg["c4bar"] = o.c4bar;
    return m;
}

json moments_json(const CMomentSummary& m) {
    return {{"cbar", sig9(m.cbar)}, {"c2bar", sig9(m.c2bar)}, {"c3bar", sig9(m.c3bar)}, {"c4bar", sig9(m.c4bar)}};
}

QuadratureSpec quad_spec(const Options& o, json& cfg) {
    QuadratureSpec q{o.abs_tol, o.x_max, o.panels};
    q.validate();
    cfg["abs_tol"] = o.abs_tol;
    cfg["x_max"] = o.x_max;
    cfg["panels"] = o.panels;
    return q;
}

// tabular result: header + rows of strings, emitted as CSV or JSON records
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    json to_json() const {
        json arr = json::array();
        for (const auto& r : rows) {
            json rec = json::object();
            for (std::size_t i = 0; i < header.size(); ++i) {
                char* end = nullptr;
                const double v = std::strtod(r[i].c_str(), &end);
                if (end && *end == '\0' && !r[i].empty()) rec[header[i]] = v;
                else rec[header[i]] = r[i];
            }
            arr.push_back(rec);
        }
        return arr;
    }
};

struct Emission {
    json result;        // JSON payload
    Table table;        // CSV payload (optional)
    bool has_table = false;
};

std::string render(const std::string& command, const Options& o, const json& cfg, const Emission& e) {
    std::ostringstream out;
    if (o.format == "csv") {
        out << "# panelur " << PANELUR_VERSION << "\n";
        out << "# command=" << command << " seed=" << o.seed << "\n";
        out << "# config=" << cfg.dump() << "\n";
        Table t = e.table;
        if (!e.has_table) {
            t.header = {"key", "value"};
            auto cell = [](const json& v) {
                return v.is_number() ? fmt9(v.get<double>()) : (v.is_string() ? v.get<std::string>() : v.dump());
            };
            for (const auto& [k, v] : e.result.items()) {
                if (v.is_object())
                    for (const auto& [k2, v2] : v.items()) t.rows.push_back({k + "." + k2, cell(v2)});
                else
                    t.rows.push_back({k, cell(v)});
            }
        }
        for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
        out << "\n";
        for (const auto& r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
            out << "\n";
        }
    } else {
        json doc;
        doc["version"] = PANELUR_VERSION;
        doc["command"] = command;
        doc["seed"] = o.seed;
        doc["config"] = cfg;
        doc["result"] = e.has_table && e.result.is_null() ? e.table.to_json() : e.result;
        out << doc.dump(2) << "\n";
    }
    return out.str();
}

void write_output(const std::string& command, const Options& o, const std::string& text) {
    std::string path = o.output;
    const char* dir = std::getenv("PANELUR_OUTPUT_DIR");
    if (path.empty() && dir && *dir) path = command + "." + o.format;
    if (!path.empty() && dir && *dir && std::filesystem::path(path).is_relative())
        path = (std::filesystem::path(dir) / path).string();
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write output file '" + path + "'");
    f << text;
}

json outcome_json(const TestOutcome& t) {
    json rej = json::object();
    for (const auto& [a, r] : t.reject_at) rej[fmt9(a)] = r;
    return {{"variant", variant_name(t.variant)}, {"statistic", sig9(t.statistic)}, {"p_value", sig9(t.p_value)},
            {"tail", variant_tail(t.variant) == Tail::Left ? "left" : "right"}, {"reject_at", rej},
            {"n_units", t.n_units}, {"n_periods", t.n_periods}};
}

Emission cmd_test(const Options& o, json& cfg) {
    if (o.input.empty()) throw InvalidArgument("test: --input is required");
    const auto panel = read_panel(o.input);
    const auto div = parse_divisor(o.divisor);
    cfg["input"] = o.input;
    cfg["divisor"] = divisor_name(div);
    TestVariant v;
    if (!o.variant.empty()) {
        v = parse_variant(o.variant);
        if (!o.case_name.empty() && parse_case(o.case_name) != variant_case(v))
            throw InvalidArgument(std::string("variant ") + variant_name(v) + " does not belong to case " + o.case_name);
    } else {
        v = ips_variant(parse_case(o.case_name.empty() ? "none" : o.case_name));
    }
    cfg["variant"] = variant_name(v);
    cfg["case"] = case_name(variant_case(v));
    Emission e;
    e.result = outcome_json(run_test(panel, v, div));
    return e;
}

Emission cmd_power(const Options& o, json& cfg) {
    const auto m = resolve_moments(o, cfg);
    cfg["level"] = o.level;
    std::vector<TestVariant> vs;
    if (o.variant.empty() || o.variant == "all") vs.assign(kAllVariants.begin(), kAllVariants.end());
    else vs.push_back(parse_variant(o.variant));
    cfg["variant"] = o.variant.empty() ? "all" : o.variant;
    Emission e;
    e.has_table = true;
    e.table.header = {"variant", "tail", "drift", "power"};
    for (auto v : vs)
        e.table.rows.push_back({variant_name(v), variant_tail(v) == Tail::Left ? "left" : "right", fmt9(drift(v, m)),
                                fmt9(local_power(v, m, o.level))});
    e.result = {{"moments", moments_json(m)}, {"rows", e.table.to_json()}};
    return e;
}

Emission cmd_power_table(const Options& o, json& cfg) {
    cfg["level"] = o.level;
    const auto t = power_table(o.level);
    Emission e;
    e.has_table = true;
    e.table.header = {"c_dist"};
    for (auto v : t.columns) e.table.header.push_back(variant_name(v));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::vector<std::string> row{t.rows[r].label()};
        for (double p : t.power[r]) row.push_back(fmt9(p));
        e.table.rows.push_back(row);
    }
    return e;
}

Emission cmd_power_curve(const Options& o, json& cfg) {
    if (o.points < 2) throw InvalidArgument("power-curve: --points must be at least 2");
    if (!(o.c_max > 0)) throw InvalidArgument("power-curve: --c-max must be positive");
    cfg["level"] = o.level;
    cfg["c_max"] = o.c_max;
    cfg["points"] = o.points;
    cfg["homogeneous"] = !o.heterogeneous;
    std::vector<TestVariant> vs;
    if (o.variant.empty() || o.variant == "all") vs.assign(kTableVariants.begin(), kTableVariants.end());
    else vs.push_back(parse_variant(o.variant));
    cfg["variant"] = o.variant.empty() ? "all" : o.variant;
    std::vector<double> grid;
    for (int i = 0; i < o.points; ++i) grid.push_back(o.c_max * i / (o.points - 1));
    Emission e;
    e.has_table = true;
    e.table.header = {"c"};
    std::vector<std::vector<PowerPoint>> curves;
    for (auto v : vs) {
        e.table.header.push_back(variant_name(v));
        curves.push_back(power_curve(v, grid, !o.heterogeneous, o.level));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{fmt9(grid[i])};
        for (const auto& c : curves) row.push_back(fmt9(c[i].power));
        e.table.rows.push_back(row);
    }
    return e;
}

Emission cmd_moments(const Options& o, json& cfg) {
    const auto q = quad_spec(o, cfg);
    const auto table = compute_null_moment_table(q);
    const auto ew = compute_ips_edgeworth_coefficients(q);
    const DriftIntegral d[3] = {DriftIntegral::Z, DriftIntegral::Zmu, DriftIntegral::Ztau};
    Emission e;
    e.has_table = true;
    e.table.header = {"case", "E_t0", "sd_t0", "E_t0_sq", "E_t0_cu", "skewness_over_6", "drift_integral",
                      "local_skewness_coef"};
    int i = 0;
    for (auto cs : {DeterministicCase::None, DeterministicCase::Intercept, DeterministicCase::InterceptTrend}) {
        const auto& m = table[cs];
        e.table.rows.push_back({case_name(cs), fmt9(m.E_t0), fmt9(m.sd_t0), fmt9(m.E_t0_sq), fmt9(m.E_t0_cu),
                                fmt9(m.skewness / 6.0), fmt9(drift_integral(d[i], q)), fmt9(ew.local_coef[i])});
        ++i;
    }
    return e;
}

Emission cmd_edgeworth(const Options& o, json& cfg) {
    if (o.variant.empty()) throw InvalidArgument("edgeworth: --variant is required");
    EdgeworthQuery q;
    q.variant = parse_variant(o.variant);
    q.x = o.x;
    q.N = o.n_big;
    if (o.hypothesis == "null") q.hypothesis = Hypothesis::Null;
    else if (o.hypothesis == "local") q.hypothesis = Hypothesis::Local;
    else throw InvalidArgument("edgeworth: --hypothesis must be null or local");
    if (q.hypothesis == Hypothesis::Local) q.moments = resolve_moments(o, cfg);
    cfg["variant"] = variant_name(q.variant);
    cfg["x"] = o.x;
    cfg["N"] = o.n_big;
    cfg["hypothesis"] = o.hypothesis;
    Emission e;
    e.result = {{"variant", variant_name(q.variant)}, {"x", sig9(q.x)}, {"N", q.N},
                {"cdf", sig9(edgeworth(q))}, {"normal_cdf", sig9(normal_cdf(q.x))}};
    if (o.diagnostic_reps != 0) {
        cfg["diagnostic_reps"] = o.diagnostic_reps;
        cfg["T"] = o.n_periods;
        cfg["threads"] = o.threads;
        if (o.n_big > 100000) throw InvalidArgument("edgeworth diagnostic needs N <= 100000");
        const auto d = edgeworth_vs_exact(q.variant, static_cast<int>(o.n_big), o.diagnostic_reps, o.seed,
                                          o.n_periods, o.threads);
        e.result["diagnostic"] = {{"reps", d.reps}, {"T", d.T}, {"ks_edgeworth", sig9(d.ks_edgeworth)},
                                  {"ks_normal", sig9(d.ks_normal)}};
    }
    return e;
}

json report_json(const RejectionReport& r) {
    return {{"variant", variant_name(r.variant)}, {"level", sig9(r.level)}, {"rate", sig9(r.rate)},
            {"mc_std_err", sig9(r.mc_std_err)}, {"reps", r.reps}, {"seed", r.seed}};
}

Emission cmd_simulate(const Options& o, json& cfg) {
    if (o.variant.empty()) throw InvalidArgument("simulate: --variant is required");
    const auto v = parse_variant(o.variant);
    SimulationSpec s;
    s.n_units = o.n_units;
    s.n_periods = o.n_periods;
    s.case_ = variant_case(v);
    s.c_dist = o.dist.empty() ? CDistribution::point_mass(0.0) : parse_c_distribution(o.dist);
    s.alpha_rate = o.alpha > 0 ? o.alpha : default_alpha(s.case_);
    s.effects = !o.no_effects;
    s.seed = o.seed;
    s.reps = o.reps;
    s.threads = o.threads;
    s.divisor = parse_divisor(o.divisor);
    cfg["variant"] = variant_name(v);
    cfg["N"] = s.n_units;
    cfg["T"] = s.n_periods;
    cfg["case"] = case_name(s.case_);
    cfg["dist"] = s.c_dist.label();
    cfg["alpha"] = s.alpha_rate;
    cfg["effects"] = s.effects;
    cfg["reps"] = s.reps;
    cfg["level"] = o.level;
    cfg["divisor"] = divisor_name(s.divisor);
    Emission e;
    e.result = report_json(rejection_rate(s, v, o.level));
    return e;
}

Emission cmd_table2(const Options& o, json& cfg) {
    cfg["reps"] = o.reps;
    cfg["N"] = o.table_n;
    cfg["T"] = o.table_t;
    cfg["level"] = o.level;
    const auto cells = replicate_table2(o.reps, o.seed, o.table_n, o.table_t, o.threads, o.level);
    Emission e;
    e.has_table = true;
    e.table.header = {"N", "c_dist"};
    const char* short_name[3] = {"Z", "Zmu", "Ztau"};
    for (int k = 0; k < 3; ++k)
        for (int T : o.table_t) e.table.header.push_back(std::string(short_name[k]) + "_T" + std::to_string(T));
    const std::size_t per_row = 3 * o.table_t.size();
    for (std::size_t i = 0; i < cells.size(); i += per_row) {
        std::vector<std::string> row{std::to_string(cells[i].N), cells[i].c_dist.label()};
        for (std::size_t j = 0; j < per_row; ++j) row.push_back(fmt9(cells[i + j].report.rate));
        e.table.rows.push_back(row);
    }
    return e;
}

Emission cmd_df_cdf(const Options& o, json& cfg) {
    cfg["model"] = o.model;
    cfg["x"] = o.x;
    cfg["c"] = o.c;
    cfg["r"] = o.r;
    cfg["tol"] = o.imhof_tol;
    ImhofSpec s;
    s.abs_tol = o.imhof_tol;
    Emission e;
    e.result = {{"model", o.model}, {"x", sig9(o.x)}, {"c", sig9(o.c)}, {"cdf", sig9(imhof_cdf(o.model, o.x, o.c, o.r, s))}};
    return e;
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
    if (dynamic_cast<const RaggedPanel*>(&e)) return "RaggedPanel";
    if (dynamic_cast<const DuplicateCell*>(&e)) return "DuplicateCell";
    if (dynamic_cast<const DegenerateRegression*>(&e)) return "DegenerateRegression";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const QuadratureError*>(&e)) return "QuadratureError";
    if (dynamic_cast<const UnsupportedVariant*>(&e)) return "UnsupportedVariant";
    if (dynamic_cast<const EmptyRun*>(&e)) return "EmptyRun";
    if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
    return "Error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Panel unit-root statistics, local asymptotic power, Edgeworth expansions and simulations"};
    app.set_version_flag("--version", PANELUR_VERSION);
    app.set_config("--config", "", "TOML/INI config file; unknown keys are rejected");
    app.allow_config_extras(false);
    app.fallthrough();
    app.require_subcommand(1, 1);

    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--output", o.output, "Output file (relative to $PANELUR_OUTPUT_DIR when set)");
        s->add_option("--seed", o.seed, "Random seed");
        s->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
        s->add_option("--level", o.level, "Significance level");
    };
    auto moment_opts = [&](CLI::App* s) {
        s->add_option("--dist", o.dist, "c distribution: U[a,b], chi2(k) or a number");
        s->add_option("--cbar", o.cbar);
        s->add_option("--c2bar", o.c2bar);
        s->add_option("--c3bar", o.c3bar);
        s->add_option("--c4bar", o.c4bar);
    };

    auto* t = app.add_subcommand("test", "Run an LLC or IPS test on a panel CSV");
    common(t);
    t->add_option("--input", o.input, "Panel CSV with header unit,time,value");
    t->add_option("--variant", o.variant);
    t->add_option("--case", o.case_name);
    t->add_option("--divisor", o.divisor, "Residual variance divisor: dof or printed");

    auto* p = app.add_subcommand("power", "Local asymptotic power of one or all variants");
    common(p);
    moment_opts(p);
    p->add_option("--variant", o.variant);

    auto* pt = app.add_subcommand("power-table", "Theoretical power over the four standard c distributions");
    common(pt);

    auto* pc = app.add_subcommand("power-curve", "Power as a function of c");
    common(pc);
    pc->add_option("--variant", o.variant);
    pc->add_option("--c-max", o.c_max);
    pc->add_option("--points", o.points);
    pc->add_flag("--heterogeneous", o.heterogeneous, "c_i ~ U[0, 2c] instead of c_i = c");

    auto* m = app.add_subcommand("moments", "Null moments of t0, drift integrals and skewness coefficients");
    common(m);
    m->add_option("--abs-tol", o.abs_tol);
    m->add_option("--x-max", o.x_max);
    m->add_option("--panels", o.panels);

    auto* e = app.add_subcommand("edgeworth", "One-term Edgeworth CDF");
    common(e);
    moment_opts(e);
    e->add_option("--variant", o.variant);
    e->add_option("--x", o.x);
    e->add_option("--N", o.n_big);
    e->add_option("--hypothesis", o.hypothesis);
    e->add_option("--diagnostic-reps", o.diagnostic_reps, "Also compare with simulation using this many replications");
    e->add_option("--T", o.n_periods);

    auto* s = app.add_subcommand("simulate", "Monte Carlo rejection rate");
    common(s);
    s->add_option("--variant", o.variant);
    s->add_option("--N", o.n_units);
    s->add_option("--T", o.n_periods);
    s->add_option("--dist", o.dist);
    s->add_option("--alpha", o.alpha, "N exponent in the local alternative (default by case)");
    s->add_option("--reps", o.reps);
    s->add_flag("--no-effects", o.no_effects);
    s->add_option("--divisor", o.divisor);

    auto* t2 = app.add_subcommand("table2", "Simulated local power of the IPS tests");
    common(t2);
    t2->add_option("--reps", o.reps);
    t2->add_option("--N", o.table_n)->delimiter(',');
    t2->add_option("--T", o.table_t)->delimiter(',');

    auto* df = app.add_subcommand("df-cdf", "Limiting CDF of T(rho_hat - 1)");
    common(df);
    df->add_option("--model", o.model);
    df->add_option("--x", o.x);
    df->add_option("--c", o.c);
    df->add_option("--r", o.r);
    df->add_option("--tol", o.imhof_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);
        json e = {{"error", {{"type", "UsageError"}, {"message", err.what()}, {"cli_error", err.get_name()}}}};
        std::cerr << e.dump() << "\n";
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        json cfg = json::object();
        cfg["format"] = o.format;
        Emission out;
        if (command == "test") out = cmd_test(o, cfg);
        else if (command == "power") out = cmd_power(o, cfg);
        else if (command == "power-table") out = cmd_power_table(o, cfg);
        else if (command == "power-curve") out = cmd_power_curve(o, cfg);
        else if (command == "moments") out = cmd_moments(o, cfg);
        else if (command == "edgeworth") out = cmd_edgeworth(o, cfg);
        else if (command == "simulate") out = cmd_simulate(o, cfg);
        else if (command == "table2") out = cmd_table2(o, cfg);
        else if (command == "df-cdf") out = cmd_df_cdf(o, cfg);
        write_output(command, o, render(command, o, cfg, out));
    } catch (const std::exception& ex) {
        json err = {{"error", {{"type", error_kind(ex)}, {"message", ex.what()}, {"command", command}}}};
        if (const auto* d = dynamic_cast<const DegenerateRegression*>(&ex); d && d->unit >= 0) err["error"]["unit"] = d->unit;
        if (const auto* pe = dynamic_cast<const ParseError*>(&ex)) err["error"]["line"] = pe->line;
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
