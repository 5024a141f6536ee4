// SPDX-License-Identifier: Apache-2.0
//
// nr-ia-sim: initial-access analytics and Monte Carlo for NR at mmWave
// Copyright (C) 2026 The nr-ia-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// nr_ia_sim: command-line front end for the analytic and Monte Carlo engines.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nr_ia/config.hpp"
#include "nr_ia/csv.hpp"
#include "nr_ia/montecarlo.hpp"
#include "nr_ia/overhead.hpp"
#include "nr_ia/recipes.hpp"

namespace {

using nr_ia::Json;

enum ExitCode { kOk = 0, kUsage = 1, kMismatch = 2 };

struct Globals {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

// Raw configuration JSON; per-command flags are merged on top before the
// scenario is built, so every derived default follows the final values.
Json base_json(const Globals& g) {
    if (g.config_path.empty()) return Json::object();
    Json j = nr_ia::read_json_file(g.config_path);
    if (!j.is_object()) throw nr_ia::ConfigError("", g.config_path + ": top level must be an object");
    return j;
}

nr_ia::Scenario build(Json base, const Json& patch) {
    base.merge_patch(patch);
    return nr_ia::scenario_from_json(base);
}

int numerology_for(double delta_f_khz) {
    if (delta_f_khz == 120.0) return 3;
    if (delta_f_khz == 240.0) return 4;
    throw nr_ia::ConfigError("delta_f", "subcarrier spacing must be 120 or 240 kHz");
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw nr_ia::ConfigError("out", "cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string provenance(std::uint64_t hash, std::uint64_t seed) {
    return "config_hash=" + nr_ia::hex64(hash) + " seed=" + std::to_string(seed);
}

// ---------------------------------------------------------------- react

struct ReactArgs {
    std::vector<std::string> frameworks;
    std::string gnb_arch = "analog";
    std::string ue_arch = "analog";
    std::vector<int> n_ss;
    std::vector<double> t_ss;
    std::vector<int> m_gnb;
    std::vector<int> m_ue;
    std::vector<double> delta_f;
};

int run_react(const Globals& g, const ReactArgs& a) {
    const Json base = base_json(g);
    const nr_ia::Scenario ref = nr_ia::scenario_from_json(base);
    const bool from_config = !g.config_path.empty();

    std::vector<std::pair<int, int>> antennas;
    if (!a.m_gnb.empty() || !a.m_ue.empty() || from_config) {
        const std::vector<int> gs = a.m_gnb.empty() ? std::vector<int>{ref.gnb_spec.m} : a.m_gnb;
        const std::vector<int> us = a.m_ue.empty() ? std::vector<int>{ref.ue_spec.m} : a.m_ue;
        for (int mg : gs) {
            for (int mu : us) antennas.emplace_back(mg, mu);
        }
    } else {
        antennas = {{4, 4}, {16, 4}, {64, 4}, {16, 16}, {64, 16}, {64, 1}};
    }
    const std::vector<int> n_ss =
        !a.n_ss.empty() ? a.n_ss : from_config ? std::vector<int>{ref.burst.n_ss} : std::vector<int>{8, 16, 32, 64};
    const std::vector<double> t_ss = a.t_ss.empty() ? std::vector<double>{ref.burst.t_ss_ms} : a.t_ss;
    std::vector<int> ns;
    for (double df : a.delta_f) ns.push_back(numerology_for(df));
    if (ns.empty()) ns.push_back(ref.numerology_n);
    const std::vector<std::string> fws =
        a.frameworks.empty() ? std::vector<std::string>{std::string(nr_ia::to_string(ref.framework))} : a.frameworks;
    for (const auto& fw : fws) {
        const auto f = nr_ia::parse_framework(fw);
        if (!f) throw nr_ia::ConfigError("framework", "expected SA-DL, MC-DL or MC-UL, got '" + fw + "'");
        if (*f == nr_ia::Framework::sa_ul) throw nr_ia::ConfigError("framework", "SA-UL is not supported");
    }

    Output out(g.out_path);
    nr_ia::CsvWriter csv(out.stream());
    csv.comment(provenance(nr_ia::config_hash(ref), g.seed.value_or(ref.montecarlo.seed)));
    csv.header({"framework", "m_gnb", "m_ue", "arch_gnb", "arch_ue", "n_ss", "t_ss_ms", "s_d", "t_ia_ms",
                "t_report_ms", "t_total_ms"});
    std::size_t rows = 0;
    for (const auto& fw : fws) {
        for (int n : ns) {
            for (const auto& [mg, mu] : antennas) {
                for (int nss : n_ss) {
                    for (double tss : t_ss) {
                        Json patch;
                        patch["framework"] = fw;
                        patch["numerology"]["n"] = n;
                        patch["ssburst"] = {{"n_ss", nss}, {"t_ss_ms", tss}};
                        patch["gnb"] = {{"m", mg}, {"arch", mg == 1 ? "omni" : a.gnb_arch}};
                        patch["ue"] = {{"m", mu}, {"arch", mu == 1 ? "omni" : a.ue_arch}};
                        nr_ia::Scenario s;
                        try {
                            s = build(base, patch);
                        } catch (const nr_ia::Error& e) {
                            csv.comment("skipped " + fw + " m_gnb=" + std::to_string(mg) + " m_ue=" +
                                        std::to_string(mu) + " n_ss=" + std::to_string(nss) + ": " + e.what());
                            continue;
                        }
                        const nr_ia::Numerology num = s.numerology();
                        const std::int64_t s_d = s.s_d();
                        const nr_ia::SweepDelay sweep = nr_ia::t_ia(s_d, s.burst, num);
                        const double report = nr_ia::beam_report_delay(s.framework, s.gnb(), s.rach);
                        csv.row({std::string(nr_ia::to_string(s.framework)), nr_ia::format_number(s.gnb_spec.m),
                                 nr_ia::format_number(s.ue_spec.m), std::string(nr_ia::to_string(s.gnb_spec.arch)),
                                 std::string(nr_ia::to_string(s.ue_spec.arch)), nr_ia::format_number(s.burst.n_ss),
                                 nr_ia::format_number(s.burst.t_ss_ms), nr_ia::format_number(s_d),
                                 nr_ia::format_number(sweep.t_ia_ms), nr_ia::format_number(report),
                                 nr_ia::format_number(nr_ia::total_ia_delay(s.framework, sweep, report))});
                        ++rows;
                    }
                }
            }
        }
    }
    if (rows == 0) {
        std::cerr << "error: no valid configuration in the requested combinations\n";
        return kUsage;
    }
    return kOk;
}

// ------------------------------------------------------------- overhead

struct OverheadArgs {
    std::vector<int> n_ss;
    std::vector<double> delta_f;
    std::vector<int> diversity;
    std::optional<double> t_ss;
};

int run_overhead(const Globals& g, const OverheadArgs& a) {
    const Json base = base_json(g);
    const nr_ia::Scenario ref = nr_ia::scenario_from_json(base);
    const bool from_config = !g.config_path.empty();
    const std::vector<int> n_ss =
        !a.n_ss.empty() ? a.n_ss : from_config ? std::vector<int>{ref.burst.n_ss} : std::vector<int>{8, 16, 32, 64};
    const std::vector<double> dfs = !a.delta_f.empty() ? a.delta_f
                                    : from_config      ? std::vector<double>{ref.numerology().delta_f_khz}
                                                       : std::vector<double>{120, 240};
    const std::vector<int> divs = !a.diversity.empty() ? a.diversity
                                  : from_config        ? std::vector<int>{ref.burst.diversity ? 1 : 0}
                                                       : std::vector<int>{0, 1};

    Output out(g.out_path);
    nr_ia::CsvWriter csv(out.stream());
    csv.comment(provenance(nr_ia::config_hash(ref), g.seed.value_or(ref.montecarlo.seed)));
    csv.header({"n_ss", "delta_f_khz", "diversity", "n_rep", "omega_5ms", "omega_tss", "omega_report"});
    for (double df : dfs) {
        for (int d : divs) {
            for (int nss : n_ss) {
                Json patch;
                patch["numerology"]["n"] = numerology_for(df);
                patch["ssburst"] = {{"n_ss", nss}, {"diversity", d}};
                if (a.t_ss) patch["ssburst"]["t_ss_ms"] = *a.t_ss;
                const nr_ia::Scenario s = build(base, patch);
                const nr_ia::OverheadResult o = nr_ia::ss_overhead(s.burst, s.numerology());
                const double report =
                    nr_ia::is_standalone(s.framework)
                        ? nr_ia::report_overhead_sa(s.gnb(), s.rach.bandwidth_mhz, s.burst.t_ss_ms,
                                                    s.burst.bandwidth_mhz, s.rach)
                        : nr_ia::report_overhead_mc(s.rach, s.burst.t_ss_ms, s.burst.bandwidth_mhz);
                csv.row({nr_ia::format_number(s.burst.n_ss), nr_ia::format_number(s.numerology().delta_f_khz),
                         nr_ia::format_number(s.burst.diversity ? 1 : 0), nr_ia::format_number(s.burst.n_rep),
                         nr_ia::format_number(o.omega_5ms), nr_ia::format_number(o.omega_tss),
                         nr_ia::format_number(report)});
            }
        }
    }
    return kOk;
}

// ------------------------------------------------------ Monte Carlo

struct McArgs {
    std::vector<double> lambda_b;
    std::optional<std::int64_t> trials;
    std::optional<double> gamma_db;
    std::optional<int> m_gnb;
    std::optional<int> m_ue;
    std::optional<std::string> gnb_arch;
    std::optional<std::string> ue_arch;
    std::optional<double> delta_f;
    std::optional<int> diversity;
};

Json mc_patch(const McArgs& a) {
    Json patch = Json::object();
    if (a.gamma_db) patch["montecarlo"]["gamma_db"] = *a.gamma_db;
    if (a.m_gnb) patch["gnb"]["m"] = *a.m_gnb;
    if (a.m_ue) patch["ue"]["m"] = *a.m_ue;
    if (a.gnb_arch) patch["gnb"]["arch"] = *a.gnb_arch;
    if (a.ue_arch) patch["ue"]["arch"] = *a.ue_arch;
    if (a.delta_f) patch["numerology"]["n"] = numerology_for(*a.delta_f);
    if (a.diversity) patch["ssburst"]["diversity"] = *a.diversity;
    return patch;
}

std::vector<std::string> estimate_fields(const nr_ia::Scenario& s, const nr_ia::Estimate& e, std::uint64_t seed) {
    return {nr_ia::format_number(s.montecarlo.lambda_b),
            nr_ia::format_number(s.gnb_spec.m),
            nr_ia::format_number(s.ue_spec.m),
            std::string(nr_ia::to_string(s.gnb_spec.arch)),
            std::string(nr_ia::to_string(s.ue_spec.arch)),
            nr_ia::format_number(s.numerology().delta_f_khz),
            nr_ia::format_number(s.burst.diversity ? 1 : 0),
            nr_ia::format_number(e.p_md),
            nr_ia::format_number(e.ci_low),
            nr_ia::format_number(e.ci_high),
            nr_ia::format_number(e.n_trials),
            nr_ia::format_number(seed)};
}

void estimate_header(nr_ia::CsvWriter& csv) {
    csv.header({"lambda_b", "m_gnb", "m_ue", "arch_gnb", "arch_ue", "delta_f_khz", "diversity", "p_md", "ci_low",
                "ci_high", "n_trials", "seed"});
}

int run_misdetect(const Globals& g, const McArgs& a) {
    Json base = base_json(g);
    base.merge_patch(mc_patch(a));
    const nr_ia::Scenario ref = nr_ia::scenario_from_json(base);
    const std::uint64_t seed = g.seed.value_or(ref.montecarlo.seed);
    const std::int64_t trials = a.trials.value_or(ref.montecarlo.n_trials);
    const std::vector<double> lambdas = a.lambda_b.empty() ? std::vector<double>{ref.montecarlo.lambda_b} : a.lambda_b;

    std::vector<nr_ia::Scenario> scenarios;
    for (double lam : lambdas) {
        Json patch;
        patch["montecarlo"]["lambda_b"] = lam;
        scenarios.push_back(build(base, patch));
    }
    Output out(g.out_path);
    nr_ia::CsvWriter csv(out.stream());
    csv.comment(provenance(nr_ia::config_hash(ref), seed));
    estimate_header(csv);
    for (const nr_ia::Scenario& s : scenarios) {
        nr_ia::Estimate e = nr_ia::run_misdetection(s, trials, seed);
        csv.row(estimate_fields(s, e, seed));
    }
    return kOk;
}

int run_snr_cdf(const Globals& g, const McArgs& a) {
    Json base = base_json(g);
    base.merge_patch(mc_patch(a));
    if (a.lambda_b.size() > 1) throw nr_ia::ConfigError("lambda_b", "snr-cdf takes a single density");
    if (!a.lambda_b.empty()) base["montecarlo"]["lambda_b"] = a.lambda_b.front();
    const nr_ia::Scenario s = nr_ia::scenario_from_json(base);
    const std::uint64_t seed = g.seed.value_or(s.montecarlo.seed);
    const std::int64_t trials = a.trials.value_or(s.montecarlo.n_trials);
    const std::vector<double> samples = nr_ia::snr_cdf(s, trials, seed);

    Output out(g.out_path);
    nr_ia::CsvWriter csv(out.stream());
    csv.comment(provenance(nr_ia::config_hash(s), seed));
    csv.header({"snr_db", "cdf"});
    for (const nr_ia::CdfPoint& p : nr_ia::ecdf_points(samples)) {
        csv.row({nr_ia::format_number(p.snr_db), nr_ia::format_number(p.cdf)});
    }
    return kOk;
}

int run_sweep(const Globals& g, const std::string& grid_path, std::optional<std::int64_t> trials_flag) {
    Json root = nr_ia::read_json_file(grid_path);
    if (!root.is_object()) throw nr_ia::ConfigError("", grid_path + ": top level must be an object");
    if (!root.contains("base") && !g.config_path.empty()) root["base"] = base_json(g);
    const nr_ia::ScenarioGrid grid = nr_ia::grid_from_json(root);
    const nr_ia::Scenario base = nr_ia::scenario_from_json(grid.base);
    const std::uint64_t seed = g.seed.value_or(grid.seed.value_or(base.montecarlo.seed));
    const std::int64_t trials = trials_flag.value_or(grid.trials.value_or(base.montecarlo.n_trials));

    const auto rows = nr_ia::sweep(grid.points, trials, seed, grid.common_random_numbers);
    Output out(g.out_path);
    nr_ia::CsvWriter csv(out.stream());
    csv.comment(provenance(nr_ia::config_hash(base), seed) + " points=" + std::to_string(rows.size()) +
                (grid.common_random_numbers ? " common_random_numbers=1" : ""));
    estimate_header(csv);
    for (const nr_ia::SweepRow& r : rows) {
        if (const std::string* err = r.error()) {
            csv.comment("point " + std::to_string(r.index) + " rejected: " + *err);
            std::vector<std::string> blank(11);
            blank.push_back(nr_ia::format_number(r.seed));
            csv.row(blank);
            continue;
        }
        csv.row(estimate_fields(std::get<nr_ia::Scenario>(r.scenario), r.estimate, r.seed));
    }
    return kOk;
}

// ---------------------------------------------------------------- repro

std::string default_recipe_path() {
    if (const char* env = std::getenv("NR_IA_SIM_RECIPES")) return env;
    return std::string(NR_IA_DATA_DIR) + "/recipes.json";
}

void print_report(std::ostream& os, const nr_ia::RecipeReport& r) {
    os << "== " << r.id << " (" << r.provenance << ")\n";
    for (const nr_ia::RecipeCheck& c : r.checks) {
        os << std::left << std::setw(10) << nr_ia::to_string(c.status) << c.label << "  actual="
           << nr_ia::format_number(c.actual);
        if (c.expected) os << " expected=" << nr_ia::format_number(*c.expected);
        os << " [" << c.tolerance << "]";
        if (!c.note.empty()) os << "  " << c.note;
        os << '\n';
    }
    os << "-- " << r.id << ": " << r.count(nr_ia::CheckStatus::pass) << " pass, "
       << r.count(nr_ia::CheckStatus::fail) << " fail, " << r.count(nr_ia::CheckStatus::deviation)
       << " documented deviation\n";
}

int run_repro(const Globals& g, const std::string& id, const std::string& recipe_path,
              std::optional<std::int64_t> trials) {
    const nr_ia::RecipeBook book = nr_ia::load_recipe_book(recipe_path);
    std::vector<std::string> ids = id == "all" ? book.ids() : std::vector<std::string>{id};
    for (const auto& i : ids) book.find(i);

    nr_ia::RecipeOptions opt;
    opt.trials = trials;
    opt.seed = g.seed;
    Output out(g.out_path);
    bool ok = true;
    for (const auto& i : ids) {
        const nr_ia::RecipeReport report = nr_ia::run_recipe(book, i, opt);
        print_report(std::cout, report);
        if (!g.out_path.empty()) nr_ia::write_report_csv(out.stream(), report);
        ok = ok && report.passed();
    }
    return ok ? kOk : kMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Initial-access delay, overhead and misdetection calculator for NR at mmWave"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "Scenario JSON file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out_path, "CSV output path (default: stdout)");
    app.add_option("--seed", g.seed, "Master seed");

    ReactArgs react;
    auto* cmd_react = app.add_subcommand("react", "Sweep and beam-report delay");
    cmd_react->add_option("--framework", react.frameworks, "SA-DL, MC-DL or MC-UL")->delimiter(',');
    cmd_react->add_option("--gnb-arch", react.gnb_arch, "analog, hybrid or digital");
    cmd_react->add_option("--ue-arch", react.ue_arch, "analog, hybrid or digital");
    cmd_react->add_option("--n-ss", react.n_ss, "SS blocks per burst")->delimiter(',');
    cmd_react->add_option("--t-ss", react.t_ss, "Burst period in ms")->delimiter(',');
    cmd_react->add_option("--m-gnb", react.m_gnb, "gNB array sizes")->delimiter(',');
    cmd_react->add_option("--m-ue", react.m_ue, "UE array sizes")->delimiter(',');
    cmd_react->add_option("--delta-f", react.delta_f, "Subcarrier spacing in kHz")->delimiter(',');

    OverheadArgs overhead;
    auto* cmd_overhead = app.add_subcommand("overhead", "SS burst and beam-report overhead");
    cmd_overhead->add_option("--n-ss", overhead.n_ss, "SS blocks per burst")->delimiter(',');
    cmd_overhead->add_option("--delta-f", overhead.delta_f, "Subcarrier spacing in kHz")->delimiter(',');
    cmd_overhead->add_option("--diversity", overhead.diversity, "Frequency diversity 0 or 1")->delimiter(',');
    cmd_overhead->add_option("--t-ss", overhead.t_ss, "Burst period in ms");

    McArgs mc;
    auto add_mc = [&mc](CLI::App* cmd) {
        cmd->add_option("--lambda-b", mc.lambda_b, "gNB density per km^2")->delimiter(',');
        cmd->add_option("--trials", mc.trials, "Trials per point");
        cmd->add_option("--gamma-db", mc.gamma_db, "Detection threshold in dB");
        cmd->add_option("--m-gnb", mc.m_gnb, "gNB array size");
        cmd->add_option("--m-ue", mc.m_ue, "UE array size");
        cmd->add_option("--gnb-arch", mc.gnb_arch, "gNB architecture");
        cmd->add_option("--ue-arch", mc.ue_arch, "UE architecture");
        cmd->add_option("--delta-f", mc.delta_f, "Subcarrier spacing in kHz");
        cmd->add_option("--diversity", mc.diversity, "Frequency diversity 0 or 1");
    };
    auto* cmd_md = app.add_subcommand("misdetect", "Misdetection probability");
    add_mc(cmd_md);
    auto* cmd_cdf = app.add_subcommand("snr-cdf", "Empirical CDF of the best-cell SNR");
    add_mc(cmd_cdf);

    std::string grid_path;
    std::optional<std::int64_t> sweep_trials;
    auto* cmd_sweep = app.add_subcommand("sweep", "Misdetection over a scenario grid");
    cmd_sweep->add_option("grid", grid_path, "Scenario-grid JSON file")->required()->check(CLI::ExistingFile);
    cmd_sweep->add_option("--trials", sweep_trials, "Trials per point");

    std::string recipe_id;
    std::string recipe_path = default_recipe_path();
    std::optional<std::int64_t> repro_trials;
    auto* cmd_repro = app.add_subcommand("repro", "Recompute reference figures and tables");
    cmd_repro->add_option("recipe", recipe_id, "Recipe id, or 'all'")->required();
    cmd_repro->add_option("--recipes", recipe_path, "Recipe data file");
    cmd_repro->add_option("--trials", repro_trials, "Trials per point for Monte Carlo recipes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*cmd_react) return run_react(g, react);
        if (*cmd_overhead) return run_overhead(g, overhead);
        if (*cmd_md) return run_misdetect(g, mc);
        if (*cmd_cdf) return run_snr_cdf(g, mc);
        if (*cmd_sweep) return run_sweep(g, grid_path, sweep_trials);
        if (*cmd_repro) return run_repro(g, recipe_id, recipe_path, repro_trials);
    } catch (const nr_ia::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
