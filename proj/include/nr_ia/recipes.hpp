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

#pragma once

// Reproduction recipes: reference values with provenance, stored in a JSON
// data file, recomputed and compared point by point.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nr_ia/config.hpp"
#include "nr_ia/csv.hpp"
#include "nr_ia/geometry.hpp"
#include "nr_ia/montecarlo.hpp"
#include "nr_ia/numerology.hpp"
#include "nr_ia/overhead.hpp"
#include "nr_ia/sweep_timing.hpp"

namespace nr_ia {

enum class CheckStatus { pass, fail, deviation };

inline std::string_view to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::deviation: return "DEVIATION";
    }
    return "?";
}

struct Tolerance {
    double abs = 0;
    double rel = 0;

    bool accepts(double expected, double actual) const {
        const double err = std::abs(actual - expected);
        return err <= abs || (rel > 0 && err <= rel * std::abs(expected));
    }

    std::string describe() const {
        if (rel > 0) return "rel " + format_number(rel);
        return "abs " + format_number(abs);
    }
};

struct RecipeCheck {
    std::string label;
    std::optional<double> expected; // absent for property checks
    double actual = 0;
    std::string tolerance;
    CheckStatus status = CheckStatus::pass;
    std::string note;
};

struct RecipeReport {
    std::string id;
    std::string provenance;
    std::vector<RecipeCheck> checks;

    std::size_t count(CheckStatus s) const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.status == s;
        return n;
    }
    bool passed() const { return count(CheckStatus::fail) == 0; }
};

// Options that only affect the Monte Carlo recipe.
struct RecipeOptions {
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    int workers = 0;
};

struct RecipeBook {
    Json root;

    std::vector<std::string> ids() const {
        std::vector<std::string> out;
        for (const auto& r : root.at("recipes")) out.push_back(r.at("id").get<std::string>());
        return out;
    }

    const Json& find(const std::string& id) const {
        for (const auto& r : root.at("recipes")) {
            if (r.at("id").get<std::string>() == id) return r;
        }
        throw ConfigError("recipe", "unknown recipe id '" + id + "'");
    }
};

inline RecipeBook load_recipe_book(const std::string& path) {
    RecipeBook book{read_json_file(path)};
    if (!book.root.contains("recipes") || !book.root.at("recipes").is_array()) {
        throw ConfigError("recipes", path + " has no recipe list");
    }
    return book;
}

namespace detail {

template <class T>
T get_or(const Json& point, const Json& recipe, const char* key, T fallback) {
    if (point.contains(key)) return point.at(key).get<T>();
    if (recipe.contains(key)) return recipe.at(key).get<T>();
    return fallback;
}

inline Tolerance tolerance_of(const Json& recipe) {
    Tolerance t;
    if (recipe.contains("tolerance")) {
        const Json& tol = recipe.at("tolerance");
        t.abs = tol.value("abs", 0.0);
        t.rel = tol.value("rel", 0.0);
    }
    return t;
}

inline ArchKind arch_of(const Json& point, const Json& recipe, const char* key) {
    const auto text = get_or<std::string>(point, recipe, key, "analog");
    const auto kind = parse_arch(text);
    if (!kind) throw ConfigError(key, "unknown architecture '" + text + "'");
    return *kind;
}

inline RecipeCheck compare(std::string label, double expected, double actual, const Tolerance& tol,
                           const Json& point) {
    RecipeCheck c;
    c.label = std::move(label);
    c.expected = expected;
    c.actual = actual;
    c.tolerance = tol.describe();
    const bool ok = tol.accepts(expected, actual);
    if (point.contains("deviation")) {
        c.status = CheckStatus::deviation;
        c.note = point.at("deviation").get<std::string>();
        if (ok) c.note = "now matches; " + c.note;
    } else {
        c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    }
    return c;
}

inline RecipeCheck property(std::string label, double actual, bool ok, std::string note = {}) {
    RecipeCheck c;
    c.label = std::move(label);
    c.actual = actual;
    c.tolerance = "property";
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    c.note = std::move(note);
    return c;
}

inline std::string pair_label(int m_gnb, ArchKind a_gnb, int m_ue, ArchKind a_ue) {
    std::ostringstream os;
    os << "gnb=" << m_gnb << '/' << to_string(a_gnb) << " ue=" << m_ue << '/' << to_string(a_ue);
    return os.str();
}

inline void run_sweep_delay(const Json& recipe, RecipeReport& report) {
    const Tolerance tol = tolerance_of(recipe);
    const Framework fw = parse_framework(recipe.value("framework", "SA-DL")).value();
    require_supported(fw);
    for (const Json& p : recipe.at("points")) {
        const int n = get_or(p, recipe, "numerology_n", 4);
        const double nu = get_or(p, recipe, "hybrid_nu", kDefaultHybridNu);
        const Numerology num = make_numerology(n, get_or(p, recipe, "c_symb_us", kSymbolConstantUs));
        const int m_gnb = p.at("m_gnb").get<int>();
        const int m_ue = p.at("m_ue").get<int>();
        const ArchKind a_gnb = arch_of(p, recipe, "arch_gnb");
        const ArchKind a_ue = arch_of(p, recipe, "arch_ue");
        const Endpoint gnb = make_endpoint(m_gnb, Role::gnb, a_gnb, nu);
        const Endpoint ue = make_endpoint(m_ue, Role::ue, a_ue, nu);
        const SsBurstConfig burst = make_ss_burst(p.at("n_ss").get<int>(), p.at("t_ss_ms").get<double>(), false, num);
        const std::int64_t s_d = sweep_blocks(gnb, ue);
        const SweepDelay delay = t_ia(s_d, burst, num);
        std::ostringstream label;
        label << pair_label(m_gnb, a_gnb, m_ue, a_ue) << " n_ss=" << burst.n_ss << " t_ss=" << burst.t_ss_ms
              << " s_d=" << s_d;
        report.checks.push_back(compare(label.str(), p.at("expected").get<double>(), delay.t_ia_ms, tol, p));
    }
}

inline void run_ss_overhead(const Json& recipe, RecipeReport& report) {
    const Tolerance tol = tolerance_of(recipe);
    for (const Json& p : recipe.at("points")) {
        const Numerology num = make_numerology(get_or(p, recipe, "numerology_n", 3),
                                               get_or(p, recipe, "c_symb_us", kSymbolConstantUs));
        const bool diversity = get_or(p, recipe, "diversity", 0) != 0;
        const SsBurstConfig burst = make_ss_burst(p.at("n_ss").get<int>(), get_or(p, recipe, "t_ss_ms", 20.0),
                                                  diversity, num, get_or(p, recipe, "bandwidth_mhz", 400.0));
        const OverheadResult o = ss_overhead(burst, num);
        std::ostringstream label;
        label << "delta_f=" << num.delta_f_khz << " D=" << diversity << " n_rep=" << burst.n_rep
              << " n_ss=" << burst.n_ss;
        report.checks.push_back(compare(label.str(), p.at("expected").get<double>(), o.omega_5ms, tol, p));
    }
}

inline void run_directions(const Json& recipe, RecipeReport& report) {
    const Tolerance tol = tolerance_of(recipe);
    for (const Json& p : recipe.at("points")) {
        const Role role = p.at("role").get<std::string>() == "gnb" ? Role::gnb : Role::ue;
        const int m = p.at("m").get<int>();
        const ArrayConfig a = make_array(m, role);
        std::ostringstream label;
        label << (role == Role::gnb ? "gnb" : "ue") << " m=" << m << " beamwidth=" << a.beamwidth_deg << " n_theta";
        report.checks.push_back(compare(label.str(), p.at("expected").get<double>(), a.n_theta, tol, p));
    }
}

inline void run_report_delay(const Json& recipe, RecipeReport& report) {
    const Tolerance tol = tolerance_of(recipe);
    for (const Json& p : recipe.at("points")) {
        const Numerology num = make_numerology(get_or(p, recipe, "numerology_n", 3));
        RachConfig rach;
        if (p.contains("mc_latency_ms")) rach.mc_latency_ms = p.at("mc_latency_ms").get<double>();
        const auto fw = parse_framework(get_or<std::string>(p, recipe, "framework", "SA-DL")).value();
        if (!is_standalone(fw)) {
            const double actual = beam_report_delay_mc(rach);
            report.checks.push_back(
                compare("MC LTE latency " + format_number(rach.mc_latency_ms), p.at("expected").get<double>(), actual,
                        tol, p));
            continue;
        }
        const int m = p.at("m_gnb").get<int>();
        const ArchKind a = arch_of(p, recipe, "arch_gnb");
        const SsBurstConfig burst =
            make_ss_burst(p.at("n_ss").get<int>(), get_or(p, recipe, "t_ss_ms", 20.0), false, num);
        const RachConfig resolved = resolve_rach(rach, burst);
        const Endpoint gnb = make_endpoint(m, Role::gnb, a);
        const double actual = beam_report_delay_sa(gnb, resolved);
        std::ostringstream label;
        label << "SA gnb=" << m << '/' << to_string(a) << " n_ss=" << burst.n_ss;
        report.checks.push_back(compare(label.str(), p.at("expected").get<double>(), actual, tol, p));
    }
}

inline void run_report_overhead(const Json& recipe, RecipeReport& report) {
    const Tolerance tol = tolerance_of(recipe);
    const double t_ss = recipe.value("t_ss_ms", 20.0);
    const double bw = recipe.value("bandwidth_mhz", 400.0);
    const RachConfig rach;
    for (const Json& p : recipe.at("points")) {
        const double rach_bw = p.value("rach_bw_mhz", 10.0);
        const auto fw = parse_framework(get_or<std::string>(p, recipe, "framework", "SA-DL")).value();
        if (!is_standalone(fw)) {
            report.checks.push_back(compare("MC single occasion", p.at("expected").get<double>(),
                                            report_overhead_mc(rach, t_ss, bw), tol, p));
            continue;
        }
        const int m = p.at("m_gnb").get<int>();
        const ArchKind a = arch_of(p, recipe, "arch_gnb");
        const double actual = report_overhead_sa(make_endpoint(m, Role::gnb, a), rach_bw, t_ss, bw, rach);
        std::ostringstream label;
        label << "SA gnb=" << m << '/' << to_string(a) << " rach_bw=" << rach_bw << "MHz";
        report.checks.push_back(compare(label.str(), p.at("expected").get<double>(), actual, tol, p));
    }
}

inline Scenario trend_scenario(const Json& recipe, int m_gnb, ArchKind a_gnb, int m_ue, ArchKind a_ue, double lambda,
                               bool diversity) {
    Json j;
    j["numerology"]["n"] = recipe.value("numerology_n", 3);
    j["ssburst"]["diversity"] = diversity ? 1 : 0;
    j["gnb"] = {{"m", m_gnb}, {"arch", std::string(to_string(a_gnb))}};
    j["ue"] = {{"m", m_ue}, {"arch", std::string(to_string(a_ue))}};
    j["montecarlo"]["lambda_b"] = lambda;
    j["montecarlo"]["gamma_db"] = recipe.value("gamma_db", -5.0);
    return scenario_from_json(j);
}

// Least-squares slope of y against x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Monte Carlo trend checks. All configurations at one density share the same
// seed, so they see identical deployments and channel draws and gaps are
// judged with the paired standard error.
inline void run_misdetection_trend(const Json& recipe, RecipeReport& report, const RecipeOptions& opt) {
    const std::int64_t trials = opt.trials.value_or(recipe.value("trials", std::int64_t{100000}));
    const std::uint64_t seed = opt.seed.value_or(recipe.value("seed", std::uint64_t{1}));
    const double z_min = recipe.value("significance_z", 2.0);
    const auto lambdas = recipe.at("lambda_b").get<std::vector<double>>();

    struct Curve {
        int m_gnb;
        int m_ue;
        ArchKind a_gnb;
        ArchKind a_ue;
        std::map<double, double> reference;
        std::vector<double> p_md;
    };
    std::vector<Curve> curves;
    for (const Json& c : recipe.at("curves")) {
        Curve curve{c.at("m_gnb").get<int>(), c.at("m_ue").get<int>(), arch_of(c, recipe, "arch_gnb"),
                    arch_of(c, recipe, "arch_ue"), {}, {}};
        for (const Json& r : c.value("reference", Json::array())) {
            curve.reference[r.at("lambda_b").get<double>()] = r.at("p_md").get<double>();
        }
        curves.push_back(std::move(curve));
    }
    auto find_curve = [&](int m_gnb, int m_ue) -> int {
        for (std::size_t i = 0; i < curves.size(); ++i) {
            if (curves[i].m_gnb == m_gnb && curves[i].m_ue == m_ue) return static_cast<int>(i);
        }
        return -1;
    };
    // Ordering chain from the best configuration to the worst.
    const std::vector<std::pair<int, int>> chain{{64, 16}, {64, 4}, {16, 4}, {4, 4}};
    const int omni = find_curve(64, 1);
    const int best = find_curve(64, 16);
    const int base = find_curve(4, 4);
    std::vector<double> omni_ratio;

    const std::string trials_note = std::to_string(trials) + " trials, seed " + std::to_string(seed);
    for (const double lambda : lambdas) {
        std::vector<std::vector<TrialOutcome>> runs;
        for (Curve& c : curves) {
            const Scenario s = trend_scenario(recipe, c.m_gnb, c.a_gnb, c.m_ue, c.a_ue, lambda, false);
            runs.push_back(simulate_trials(s, trials, seed, opt.workers));
            const Estimate e = summarize(runs.back());
            c.p_md.push_back(e.p_md);
            std::ostringstream label;
            label << "p_md " << pair_label(c.m_gnb, c.a_gnb, c.m_ue, c.a_ue) << " lambda_b=" << lambda;
            RecipeCheck info = property(label.str(), e.p_md, true,
                                        "95% CI [" + format_number(e.ci_low) + ", " + format_number(e.ci_high) + "]");
            info.tolerance = "reported";
            if (auto it = c.reference.find(lambda); it != c.reference.end()) info.expected = it->second;
            report.checks.push_back(std::move(info));
        }
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            const int b = find_curve(chain[k].first, chain[k].second);
            const int w = find_curve(chain[k + 1].first, chain[k + 1].second);
            if (b < 0 || w < 0) continue;
            const PairedComparison cmp = compare_paired(runs[static_cast<std::size_t>(b)],
                                                        runs[static_cast<std::size_t>(w)]);
            std::ostringstream label;
            label << "ordering (" << chain[k].first << ',' << chain[k].second << ") <= (" << chain[k + 1].first << ','
                  << chain[k + 1].second << ") lambda_b=" << lambda;
            std::ostringstream note;
            note << "gap " << format_number(cmp.gap) << ", paired z " << format_number(cmp.z_paired())
                 << ", unpaired z " << format_number(cmp.se_unpaired > 0 ? cmp.gap / cmp.se_unpaired : 0.0);
            report.checks.push_back(property(label.str(), cmp.gap,
                                             cmp.gap > 0 && cmp.z_paired() >= z_min, note.str()));
        }
        if (omni >= 0 && best >= 0) {
            const PairedComparison cmp = compare_paired(runs[static_cast<std::size_t>(best)],
                                                        runs[static_cast<std::size_t>(omni)]);
            omni_ratio.push_back(cmp.p_better > 0 ? cmp.p_worse / cmp.p_better : INFINITY);
            std::ostringstream note;
            note << "gap " << format_number(cmp.gap) << ", paired z " << format_number(cmp.z_paired())
                 << ", ratio " << format_number(omni_ratio.back());
            report.checks.push_back(property("omni UE above (64,16) lambda_b=" + format_number(lambda), cmp.gap,
                                             cmp.gap > 0 && cmp.z_paired() >= z_min, note.str()));
        }
        if (base >= 0 && recipe.value("diversity_check", true)) {
            const Curve& c = curves[static_cast<std::size_t>(base)];
            const Scenario s = trend_scenario(recipe, c.m_gnb, c.a_gnb, c.m_ue, c.a_ue, lambda, true);
            const auto rep = simulate_trials(s, trials, seed, opt.workers);
            const PairedComparison cmp = compare_paired(rep, runs[static_cast<std::size_t>(base)]);
            std::ostringstream note;
            note << "D=1 " << format_number(cmp.p_better) << " vs D=0 " << format_number(cmp.p_worse);
            report.checks.push_back(property("diversity D=1 <= D=0 (4,4) 120 kHz lambda_b=" + format_number(lambda),
                                             cmp.gap, cmp.p_better <= cmp.p_worse, note.str()));
        }
    }

    for (const Curve& c : curves) {
        bool strictly = true;
        for (std::size_t i = 1; i < c.p_md.size(); ++i) strictly = strictly && c.p_md[i] < c.p_md[i - 1];
        report.checks.push_back(property("strictly decreasing in lambda_b " +
                                             pair_label(c.m_gnb, c.a_gnb, c.m_ue, c.a_ue),
                                         c.p_md.empty() ? 0.0 : c.p_md.back(), strictly, trials_note));
    }
    if (omni_ratio.size() >= 2) {
        const double s = slope(lambdas, omni_ratio);
        const bool grows = omni_ratio.back() > omni_ratio.front() && s > 0;
        report.checks.push_back(property("omni/(64,16) relative gap grows with lambda_b", s, grows,
                                         "ratio " + format_number(omni_ratio.front()) + " -> " +
                                             format_number(omni_ratio.back()) + ", slope per gNB/km^2"));
    }
    if (recipe.contains("band")) {
        const Json& band = recipe.at("band");
        const int idx = find_curve(band.at("m_gnb").get<int>(), band.at("m_ue").get<int>());
        const double lam = band.at("lambda_b").get<double>();
        for (std::size_t i = 0; idx >= 0 && i < lambdas.size(); ++i) {
            if (lambdas[i] != lam) continue;
            const double p = curves[static_cast<std::size_t>(idx)].p_md[i];
            const double lo = band.at("low").get<double>();
            const double hi = band.at("high").get<double>();
            RecipeCheck c = property("calibration band p_md(4,4) lambda_b=" + format_number(lam), p,
                                     p >= lo && p <= hi, "p_md " + format_number(p));
            c.tolerance = "[" + format_number(lo) + ", " + format_number(hi) + "]";
            if (auto it = curves[static_cast<std::size_t>(idx)].reference.find(lam);
                it != curves[static_cast<std::size_t>(idx)].reference.end()) {
                c.expected = it->second;
            }
            report.checks.push_back(std::move(c));
        }
    }
}

} // namespace detail

inline RecipeReport run_recipe(const RecipeBook& book, const std::string& id, const RecipeOptions& opt = {}) {
    const Json& recipe = book.find(id);
    RecipeReport report;
    report.id = id;
    report.provenance = recipe.value("provenance", "");
    const std::string kind = recipe.at("kind").get<std::string>();
    if (kind == "sweep_delay") {
        detail::run_sweep_delay(recipe, report);
    } else if (kind == "ss_overhead") {
        detail::run_ss_overhead(recipe, report);
    } else if (kind == "directions") {
        detail::run_directions(recipe, report);
    } else if (kind == "report_delay") {
        detail::run_report_delay(recipe, report);
    } else if (kind == "report_overhead") {
        detail::run_report_overhead(recipe, report);
    } else if (kind == "misdetection_trend") {
        detail::run_misdetection_trend(recipe, report, opt);
    } else {
        throw ConfigError("recipes." + id + ".kind", "unknown recipe kind '" + kind + "'");
    }
    return report;
}

inline void write_report_csv(std::ostream& out, const RecipeReport& report) {
    CsvWriter csv(out);
    csv.comment("recipe=" + report.id + " provenance=" + report.provenance);
    csv.header({"recipe", "check", "expected", "actual", "tolerance", "status", "note"});
    for (const RecipeCheck& c : report.checks) {
        std::string note = c.note;
        for (char& ch : note) {
            if (ch == ',') ch = ';';
        }
        csv.row({report.id, c.label, c.expected ? format_number(*c.expected) : "", format_number(c.actual),
                 c.tolerance, std::string(to_string(c.status)), note});
    }
}

} // namespace nr_ia
