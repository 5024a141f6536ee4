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

#include <cstdint>

#include "nr_ia/channel.hpp"
#include "nr_ia/error.hpp"
#include "nr_ia/geometry.hpp"
#include "nr_ia/numerology.hpp"
#include "nr_ia/sweep_timing.hpp"

namespace nr_ia {

struct MonteCarloSettings {
    double lambda_b = 10.0; // gNB per km^2
    double radius_m = 400.0;
    double gamma_db = -5.0;
    std::int64_t n_trials = 10000;
    std::uint64_t seed = 1;

    friend bool operator==(const MonteCarloSettings&, const MonteCarloSettings&) = default;
};

struct EndpointSpec {
    int m = 4;
    ArchKind arch = ArchKind::analog;

    friend bool operator==(const EndpointSpec&, const EndpointSpec&) = default;
};

// Default transmit power and receiver noise figure by link direction.
inline constexpr double kGnbTxPowerDbm = 30.0;
inline constexpr double kUeTxPowerDbm = 23.0;
inline constexpr double kUeNoiseFigureDb = 5.0;
inline constexpr double kGnbNoiseFigureDb = 7.0;

// Everything needed to evaluate one initial-access configuration.
struct Scenario {
    int numerology_n = 3;
    double c_symb_us = kSymbolConstantUs;
    SsBurstConfig burst;
    EndpointSpec gnb_spec{4, ArchKind::analog};
    EndpointSpec ue_spec{4, ArchKind::analog};
    double hybrid_nu = kDefaultHybridNu;
    Framework framework = Framework::sa_dl;
    RachConfig rach;
    ChannelParams channel;
    MonteCarloSettings montecarlo;

    Numerology numerology() const { return make_numerology(numerology_n, c_symb_us); }
    Endpoint gnb() const { return make_endpoint(gnb_spec.m, Role::gnb, gnb_spec.arch, hybrid_nu); }
    Endpoint ue() const { return make_endpoint(ue_spec.m, Role::ue, ue_spec.arch, hybrid_nu); }

    // The node emitting the swept reference signals: gNB in downlink, UE in uplink.
    Endpoint transmitter() const { return is_uplink(framework) ? ue() : gnb(); }
    Endpoint receiver() const { return is_uplink(framework) ? gnb() : ue(); }

    std::int64_t s_d() const { return sweep_blocks(gnb(), ue()); }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Cross-field checks, reported against the JSON path of the offending field.
inline void validate(const Scenario& s) {
    auto fail = [](const char* path, const std::string& msg) { throw ConfigError(path, msg); };

    if (s.numerology_n != 3 && s.numerology_n != 4) fail("numerology.n", "must be 3 (120 kHz) or 4 (240 kHz)");
    if (!(s.c_symb_us > 0)) fail("numerology.c_symb_us", "must be positive");
    const Numerology num = s.numerology();

    if (!is_allowed_blocks_per_burst(s.burst.n_ss)) fail("ssburst.n_ss", "must be one of 8, 16, 32, 64");
    if (!is_allowed_burst_period(s.burst.t_ss_ms)) fail("ssburst.t_ss_ms", "must be one of 5, 10, 20, 40, 80, 160");
    if (!(s.burst.bandwidth_mhz > 0)) fail("carrier.bandwidth_mhz", "must be positive");
    int expected_rep = 0;
    try {
        expected_rep = repetitions(num.delta_f_khz, s.burst.diversity, s.burst.bandwidth_mhz);
    } catch (const DomainError& e) {
        fail("ssburst.diversity", e.what());
    }
    if (s.burst.n_rep != expected_rep) {
        fail("ssburst.n_rep", "must be " + std::to_string(expected_rep) + " for this spacing and diversity setting");
    }

    for (const auto& [path, spec] : {std::pair{"gnb", s.gnb_spec}, std::pair{"ue", s.ue_spec}}) {
        if (!is_supported_array_size(spec.m)) fail((std::string(path) + ".m").c_str(), "must be 1, 4, 16 or 64");
        if (spec.arch == ArchKind::omni && spec.m != 1) {
            fail((std::string(path) + ".arch").c_str(), "omni requires m = 1");
        }
    }
    if (!(s.hybrid_nu >= 1.0)) fail("hybrid.nu", "must be >= 1");

    if (s.framework == Framework::sa_ul) {
        fail("framework", "SA-UL is not supported; uplink measurement needs the LTE overlay (use MC-UL)");
    }
    // Digital beamforming is only used for reception.
    const bool uplink = is_uplink(s.framework);
    const EndpointSpec& tx = uplink ? s.ue_spec : s.gnb_spec;
    if (tx.arch == ArchKind::digital && tx.m > 1) {
        fail(uplink ? "ue.arch" : "gnb.arch", "digital beamforming is receive-only; the transmitter must be analog "
                                              "or hybrid in this framework");
    }

    const RachConfig& r = s.rach;
    if (!(r.occasion_slot_ms > 0)) fail("rach.occasion_slot_ms", "must be positive");
    if (r.opportunities_per_slot < 1) fail("rach.opportunities_per_slot", "must be >= 1");
    if (r.slots_per_period < 1) fail("rach.slots_per_period", "must be >= 1");
    if (!(r.period_ms > 0)) fail("rach.period_ms", "must be positive");
    if (!(r.mc_latency_ms >= kMinLteLatencyMs && r.mc_latency_ms <= kMaxLteLatencyMs)) {
        fail("rach.mc_latency_ms", "must lie in [0.8, 10.5] ms");
    }
    if (r.bandwidth_mhz != 10.0 && r.bandwidth_mhz != 20.0) fail("rach.bandwidth_mhz", "must be 10 or 20");
    if (!(r.occasion_resource_ms_mhz > 0)) fail("rach.occasion_resource_ms_mhz", "must be positive");

    try {
        validate(s.channel);
    } catch (const DomainError& e) {
        fail("channel", e.what());
    }

    const MonteCarloSettings& mc = s.montecarlo;
    if (!(mc.lambda_b > 0)) fail("montecarlo.lambda_b", "must be positive");
    if (!(mc.radius_m > 0)) fail("montecarlo.radius_m", "must be positive");
    if (mc.n_trials < 1) fail("montecarlo.n_trials", "must be >= 1");
    if (std::isnan(mc.gamma_db)) fail("montecarlo.gamma_db", "must be a number");
}

} // namespace nr_ia
