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

// JSON scenario files. Every key is optional; missing ones take the
// documented defaults, unknown ones are rejected with their dotted path.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "nr_ia/error.hpp"
#include "nr_ia/montecarlo.hpp"
#include "nr_ia/scenario.hpp"

namespace nr_ia {

using Json = nlohmann::json;

namespace detail {

// Reads the members of one JSON object, remembering which keys were used so
// that leftovers can be reported.
class ObjectReader {
public:
    ObjectReader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const Json* find(const std::string& key) {
        used_.insert(key);
        const auto it = obj_.find(key);
        return it == obj_.end() || it->is_null() ? nullptr : &*it;
    }

    std::optional<double> number(const std::string& key) {
        const Json* v = find(key);
        if (!v) return std::nullopt;
        if (v->is_number()) return v->get<double>();
        if (v->is_string()) {
            const auto s = v->get<std::string>();
            if (s == "-inf") return -std::numeric_limits<double>::infinity();
            if (s == "inf") return std::numeric_limits<double>::infinity();
        }
        throw ConfigError(child_path(key), "expected a number");
    }

    std::optional<std::int64_t> integer(const std::string& key) {
        const Json* v = find(key);
        if (!v) return std::nullopt;
        if (v->is_number_integer()) return v->get<std::int64_t>();
        if (v->is_number_float()) {
            const double d = v->get<double>();
            if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
        }
        throw ConfigError(child_path(key), "expected an integer");
    }

    std::optional<std::uint64_t> unsigned_integer(const std::string& key) {
        const Json* v = find(key);
        if (!v) return std::nullopt;
        if (v->is_number_unsigned()) return v->get<std::uint64_t>();
        if (v->is_number_integer() && v->get<std::int64_t>() >= 0) return v->get<std::uint64_t>();
        throw ConfigError(child_path(key), "expected a non-negative integer");
    }

    std::optional<bool> flag(const std::string& key) {
        const Json* v = find(key);
        if (!v) return std::nullopt;
        if (v->is_boolean()) return v->get<bool>();
        if (v->is_number_integer()) {
            const auto i = v->get<std::int64_t>();
            if (i == 0 || i == 1) return i == 1;
        }
        throw ConfigError(child_path(key), "expected 0, 1, true or false");
    }

    std::optional<std::string> string(const std::string& key) {
        const Json* v = find(key);
        if (!v) return std::nullopt;
        if (!v->is_string()) throw ConfigError(child_path(key), "expected a string");
        return v->get<std::string>();
    }

    std::optional<ObjectReader> object(const std::string& key) {
        const Json* v = find(key);
        if (!v) return std::nullopt;
        return ObjectReader(*v, child_path(key));
    }

    void finish() const {
        for (const auto& [key, value] : obj_.items()) {
            if (!used_.count(key)) throw ConfigError(child_path(key), "unknown key");
        }
    }

private:
    const Json& obj_;
    std::string path_;
    std::set<std::string> used_;
};

template <class T>
void assign(std::optional<T> v, T& out) {
    if (v) out = *v;
}

inline void assign(std::optional<std::int64_t> v, int& out) {
    if (v) out = static_cast<int>(*v);
}

inline void read_pathloss(ObjectReader r, PathlossModel& m) {
    assign(r.number("alpha_db"), m.alpha_db);
    assign(r.number("beta"), m.beta);
    assign(r.number("sigma_db"), m.sigma_db);
    r.finish();
}

inline void read_endpoint(ObjectReader r, EndpointSpec& e, bool& arch_given) {
    assign(r.integer("m"), e.m);
    if (const auto a = r.string("arch")) {
        const auto kind = parse_arch(*a);
        if (!kind) throw ConfigError(r.child_path("arch"), "expected analog, hybrid, digital or omni");
        e.arch = *kind;
        arch_given = true;
    }
    r.finish();
}

inline Json number_json(double v) {
    if (std::isinf(v)) return v < 0 ? Json("-inf") : Json("inf");
    return Json(v);
}

} // namespace detail

// Builds a validated scenario from parsed JSON, filling every default.
inline Scenario scenario_from_json(const Json& root) {
    using detail::assign;
    Scenario s;
    detail::ObjectReader r(root, "");

    if (auto num = r.object("numerology")) {
        assign(num->integer("n"), s.numerology_n);
        assign(num->number("c_symb_us"), s.c_symb_us);
        num->finish();
    }
    std::optional<std::int64_t> explicit_rep;
    if (auto ss = r.object("ssburst")) {
        assign(ss->integer("n_ss"), s.burst.n_ss);
        assign(ss->number("t_ss_ms"), s.burst.t_ss_ms);
        assign(ss->flag("diversity"), s.burst.diversity);
        explicit_rep = ss->integer("n_rep");
        ss->finish();
    }
    if (auto carrier = r.object("carrier")) {
        assign(carrier->number("bandwidth_mhz"), s.burst.bandwidth_mhz);
        carrier->finish();
    }
    bool gnb_arch_given = false;
    bool ue_arch_given = false;
    if (auto g = r.object("gnb")) detail::read_endpoint(*g, s.gnb_spec, gnb_arch_given);
    if (auto u = r.object("ue")) detail::read_endpoint(*u, s.ue_spec, ue_arch_given);
    // A single element is omnidirectional unless stated otherwise.
    if (s.gnb_spec.m == 1) s.gnb_spec.arch = ArchKind::omni;
    if (s.ue_spec.m == 1) s.ue_spec.arch = ArchKind::omni;
    if (auto h = r.object("hybrid")) {
        assign(h->number("nu"), s.hybrid_nu);
        h->finish();
    }
    if (const auto fw = r.string("framework")) {
        const auto f = parse_framework(*fw);
        if (!f) throw ConfigError("framework", "expected SA-DL, MC-DL or MC-UL");
        s.framework = *f;
    }

    std::optional<double> period;
    std::optional<std::int64_t> slots;
    if (auto rach = r.object("rach")) {
        assign(rach->number("occasion_slot_ms"), s.rach.occasion_slot_ms);
        assign(rach->integer("opportunities_per_slot"), s.rach.opportunities_per_slot);
        slots = rach->integer("slots_per_period");
        period = rach->number("period_ms");
        assign(rach->number("mc_latency_ms"), s.rach.mc_latency_ms);
        assign(rach->number("bandwidth_mhz"), s.rach.bandwidth_mhz);
        assign(rach->number("occasion_resource_ms_mhz"), s.rach.occasion_resource_ms_mhz);
        rach->finish();
    }
    s.rach.slots_per_period = slots ? static_cast<int>(*slots) : s.burst.n_ss;
    s.rach.period_ms = period ? *period : s.burst.t_ss_ms;

    std::optional<double> tx_power;
    std::optional<double> noise_figure;
    if (auto ch = r.object("channel")) {
        assign(ch->number("carrier_ghz"), s.channel.carrier_ghz);
        if (auto los = ch->object("los")) detail::read_pathloss(*los, s.channel.los);
        if (auto nlos = ch->object("nlos")) detail::read_pathloss(*nlos, s.channel.nlos);
        assign(ch->number("p_los_scale_m"), s.channel.p_los_scale_m);
        if (auto out = ch->object("outage")) {
            assign(out->number("a_out_per_m"), s.channel.outage.a_out_per_m);
            assign(out->number("b_out"), s.channel.outage.b_out);
            out->finish();
        }
        tx_power = ch->number("tx_power_dbm");
        noise_figure = ch->number("noise_figure_db");
        assign(ch->number("noise_psd_dbm_hz"), s.channel.noise_psd_dbm_hz);
        if (auto f = ch->object("fading")) {
            assign(f->flag("enabled"), s.channel.fading.enabled);
            assign(f->number("m_los"), s.channel.fading.m_los);
            assign(f->number("m_nlos"), s.channel.fading.m_nlos);
            f->finish();
        }
        ch->finish();
    }
    const bool uplink = is_uplink(s.framework);
    s.channel.tx_power_dbm = tx_power ? *tx_power : (uplink ? kUeTxPowerDbm : kGnbTxPowerDbm);
    s.channel.noise_figure_db = noise_figure ? *noise_figure : (uplink ? kGnbNoiseFigureDb : kUeNoiseFigureDb);

    if (auto mc = r.object("montecarlo")) {
        assign(mc->number("lambda_b"), s.montecarlo.lambda_b);
        assign(mc->number("radius_m"), s.montecarlo.radius_m);
        assign(mc->number("gamma_db"), s.montecarlo.gamma_db);
        assign(mc->integer("n_trials"), s.montecarlo.n_trials);
        assign(mc->unsigned_integer("seed"), s.montecarlo.seed);
        mc->finish();
    }
    r.finish();

    // n_rep follows from spacing and diversity; an explicit value must agree.
    if (s.numerology_n == 3 || s.numerology_n == 4) {
        const double delta_f = 15.0 * (1 << s.numerology_n);
        try {
            s.burst.n_rep = repetitions(delta_f, s.burst.diversity, s.burst.bandwidth_mhz);
        } catch (const DomainError& e) {
            throw ConfigError("ssburst.diversity", e.what());
        }
        if (explicit_rep && *explicit_rep != s.burst.n_rep) {
            throw ConfigError("ssburst.n_rep", "conflicts with numerology.n and ssburst.diversity, which imply n_rep = " +
                                                   std::to_string(s.burst.n_rep));
        }
    }
    validate(s);
    return s;
}

inline Json to_json(const Scenario& s) {
    using detail::number_json;
    Json j;
    j["numerology"] = {{"n", s.numerology_n}, {"c_symb_us", s.c_symb_us}};
    j["ssburst"] = {{"n_ss", s.burst.n_ss},
                    {"t_ss_ms", s.burst.t_ss_ms},
                    {"diversity", s.burst.diversity ? 1 : 0},
                    {"n_rep", s.burst.n_rep}};
    j["carrier"] = {{"bandwidth_mhz", s.burst.bandwidth_mhz}};
    j["gnb"] = {{"m", s.gnb_spec.m}, {"arch", std::string(to_string(s.gnb_spec.arch))}};
    j["ue"] = {{"m", s.ue_spec.m}, {"arch", std::string(to_string(s.ue_spec.arch))}};
    j["hybrid"] = {{"nu", s.hybrid_nu}};
    j["framework"] = std::string(to_string(s.framework));
    j["rach"] = {{"occasion_slot_ms", s.rach.occasion_slot_ms},
                 {"opportunities_per_slot", s.rach.opportunities_per_slot},
                 {"slots_per_period", s.rach.slots_per_period},
                 {"period_ms", s.rach.period_ms},
                 {"mc_latency_ms", s.rach.mc_latency_ms},
                 {"bandwidth_mhz", s.rach.bandwidth_mhz},
                 {"occasion_resource_ms_mhz", s.rach.occasion_resource_ms_mhz}};
    auto pl = [](const PathlossModel& m) {
        return Json{{"alpha_db", m.alpha_db}, {"beta", m.beta}, {"sigma_db", m.sigma_db}};
    };
    j["channel"] = {{"carrier_ghz", s.channel.carrier_ghz},
                    {"los", pl(s.channel.los)},
                    {"nlos", pl(s.channel.nlos)},
                    {"p_los_scale_m", s.channel.p_los_scale_m},
                    {"outage", {{"a_out_per_m", s.channel.outage.a_out_per_m}, {"b_out", s.channel.outage.b_out}}},
                    {"tx_power_dbm", s.channel.tx_power_dbm},
                    {"noise_figure_db", s.channel.noise_figure_db},
                    {"noise_psd_dbm_hz", s.channel.noise_psd_dbm_hz},
                    {"fading",
                     {{"enabled", s.channel.fading.enabled},
                      {"m_los", s.channel.fading.m_los},
                      {"m_nlos", s.channel.fading.m_nlos}}}};
    j["montecarlo"] = {{"lambda_b", s.montecarlo.lambda_b},
                       {"radius_m", s.montecarlo.radius_m},
                       {"gamma_db", number_json(s.montecarlo.gamma_db)},
                       {"n_trials", s.montecarlo.n_trials},
                       {"seed", s.montecarlo.seed}};
    return j;
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError("", source + ": JSON parse error: " + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

inline Scenario load_scenario(const std::string& path) { return scenario_from_json(read_json_file(path)); }

// FNV-1a over the canonical serialization; identical scenarios hash equal.
inline std::uint64_t config_hash(const Scenario& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const unsigned char c : to_json(s).dump()) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

// A scenario grid: a base scenario plus axes whose cartesian product gives
// the sweep points. Axes, outermost first: numerology_n, diversity,
// antennas, gamma_db, lambda_b.
struct ScenarioGrid {
    Json base = Json::object();
    std::vector<GridPoint> points;
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    bool common_random_numbers = false;
};

inline ScenarioGrid grid_from_json(const Json& root) {
    ScenarioGrid grid;
    detail::ObjectReader r(root, "");
    if (const Json* b = r.find("base")) grid.base = *b;
    grid.trials = r.integer("trials");
    grid.seed = r.unsigned_integer("seed");
    if (const auto crn = r.flag("common_random_numbers")) grid.common_random_numbers = *crn;

    auto list = [](const Json* v, const std::string& path) {
        if (!v) return std::vector<Json>{Json()};
        if (!v->is_array() || v->empty()) throw ConfigError(path, "expected a non-empty array");
        return std::vector<Json>(v->begin(), v->end());
    };
    std::vector<Json> ns{Json()}, divs{Json()}, antennas{Json()}, gammas{Json()}, lambdas{Json()};
    if (auto axes = r.object("grid")) {
        ns = list(axes->find("numerology_n"), "grid.numerology_n");
        divs = list(axes->find("diversity"), "grid.diversity");
        antennas = list(axes->find("antennas"), "grid.antennas");
        gammas = list(axes->find("gamma_db"), "grid.gamma_db");
        lambdas = list(axes->find("lambda_b"), "grid.lambda_b");
        axes->finish();
    }
    r.finish();

    for (const Json& n : ns) {
        for (const Json& d : divs) {
            for (const Json& ant : antennas) {
                for (const Json& g : gammas) {
                    for (const Json& lam : lambdas) {
                        Json point = grid.base.is_object() ? grid.base : Json::object();
                        if (!n.is_null()) point["numerology"]["n"] = n;
                        if (!d.is_null()) point["ssburst"]["diversity"] = d;
                        if (!ant.is_null()) point.merge_patch(ant);
                        if (!g.is_null()) point["montecarlo"]["gamma_db"] = g;
                        if (!lam.is_null()) point["montecarlo"]["lambda_b"] = lam;
                        GridPoint gp;
                        try {
                            gp.scenario = scenario_from_json(point);
                        } catch (const Error& e) {
                            gp.scenario = std::string(e.what());
                        }
                        grid.points.push_back(std::move(gp));
                    }
                }
            }
        }
    }
    return grid;
}

inline ScenarioGrid load_grid(const std::string& path) { return grid_from_json(read_json_file(path)); }

} // namespace nr_ia
