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

// Link budget at 28 GHz: three-state (LOS / NLOS / outage) pathloss with
// log-normal shadowing, ideal boresight array gains and Nakagami-m power
// fading per SS chunk.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <string_view>
#include <type_traits>
#include <vector>

#include "nr_ia/error.hpp"
#include "nr_ia/geometry.hpp"
#include "nr_ia/numerology.hpp"

namespace nr_ia {

inline constexpr double kNoSignalDb = -std::numeric_limits<double>::infinity();

enum class Regime { los, nlos, outage };

inline std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::los: return "LOS";
    case Regime::nlos: return "NLOS";
    case Regime::outage: return "outage";
    }
    return "?";
}

// Anything that can hand out uniform (0,1) and standard normal variates.
template <class R>
concept UniformSource = requires(R& r) {
    { r.uniform() } -> std::convertible_to<double>;
    { r.normal() } -> std::convertible_to<double>;
};

template <class R>
concept GammaSource = UniformSource<R> && requires(R& r, double shape) {
    { r.gamma(shape) } -> std::convertible_to<double>;
};

// PL = alpha + 10 beta log10(d) + N(0, sigma^2)
struct PathlossModel {
    double alpha_db = 0;
    double beta = 2;
    double sigma_db = 0;

    friend bool operator==(const PathlossModel&, const PathlossModel&) = default;
};

struct OutageModel {
    double a_out_per_m = 1.0 / 30.0;
    double b_out = 5.2;

    friend bool operator==(const OutageModel&, const OutageModel&) = default;
};

struct FadingConfig {
    bool enabled = true;
    double m_los = 3.0;
    double m_nlos = 2.0;

    friend bool operator==(const FadingConfig&, const FadingConfig&) = default;
};

// Defaults follow the 28 GHz New York City measurement model.
struct ChannelParams {
    double carrier_ghz = 28.0;
    PathlossModel los{61.4, 2.0, 5.8};
    PathlossModel nlos{72.0, 2.92, 8.7};
    double p_los_scale_m = 67.1;
    OutageModel outage;
    double tx_power_dbm = 30.0;
    double noise_figure_db = 5.0;
    double noise_psd_dbm_hz = -174.0;
    FadingConfig fading;

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

inline void validate(const ChannelParams& p) {
    for (const PathlossModel* m : {&p.los, &p.nlos}) {
        if (!(m->sigma_db >= 0)) throw DomainError("shadowing sigma must be >= 0");
        if (!(m->beta > 0)) throw DomainError("pathloss exponent beta must be > 0");
    }
    if (!(p.p_los_scale_m > 0)) throw DomainError("LOS probability scale must be > 0");
    if (!(p.outage.a_out_per_m >= 0)) throw DomainError("outage a_out must be >= 0");
    if (p.fading.enabled && (!(p.fading.m_los > 0) || !(p.fading.m_nlos > 0))) {
        throw DomainError("Nakagami m must be > 0");
    }
}

struct RegimeProbabilities {
    double los = 0;
    double nlos = 0;
    double outage = 0;
};

inline RegimeProbabilities regime_probabilities(double distance_m, const ChannelParams& p) {
    if (!(distance_m > 0)) {
        throw DomainError("link distance must be positive");
    }
    RegimeProbabilities out;
    out.outage = std::max(0.0, 1.0 - std::exp(-p.outage.a_out_per_m * distance_m + p.outage.b_out));
    out.los = (1.0 - out.outage) * std::exp(-distance_m / p.p_los_scale_m);
    out.nlos = std::max(0.0, 1.0 - out.outage - out.los);
    return out;
}

inline double mean_pathloss_db(const PathlossModel& m, double distance_m) {
    return m.alpha_db + 10.0 * m.beta * std::log10(distance_m);
}

struct LinkState {
    Regime regime = Regime::outage;
    double pathloss_db = std::numeric_limits<double>::infinity();
    double distance_m = 0;
};

// Draws the propagation state and shadowed pathloss of one gNB-UE link.
// Consumes one uniform and, unless in outage, one normal variate.
template <UniformSource Rng>
LinkState link_regime(double distance_m, const ChannelParams& p, Rng& rng) {
    const RegimeProbabilities probs = regime_probabilities(distance_m, p);
    LinkState link;
    link.distance_m = distance_m;
    const double u = rng.uniform();
    if (u < probs.outage) {
        link.regime = Regime::outage;
        return link;
    }
    link.regime = u < probs.outage + probs.los ? Regime::los : Regime::nlos;
    const PathlossModel& model = link.regime == Regime::los ? p.los : p.nlos;
    link.pathloss_db = mean_pathloss_db(model, distance_m) + model.sigma_db * rng.normal();
    return link;
}

// Boresight array gain; an omnidirectional endpoint contributes 0 dB.
inline double array_gain_db(const Endpoint& e) {
    if (e.arch.kind == ArchKind::omni) return 0.0;
    return 10.0 * std::log10(static_cast<double>(e.array.m));
}

inline double noise_power_dbm(const ChannelParams& p, const Numerology& num) {
    const double bandwidth_hz = kSubcarriersPerSsBlock * num.delta_f_khz * 1e3;
    return p.noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz) + p.noise_figure_db;
}

// Long-term SNR of the best-aligned beam pair over one SS chunk. Transmit power
// is shared among the K_BF simultaneous beams of the transmitter.
inline double snr_avg_db(const LinkState& link, const Endpoint& tx, const Endpoint& rx, const ChannelParams& p,
                         const Numerology& num) {
    if (link.regime == Regime::outage) return kNoSignalDb;
    const int k_tx = parallel_beams(tx.array, tx.arch);
    return p.tx_power_dbm - 10.0 * std::log10(static_cast<double>(k_tx)) + array_gain_db(tx) + array_gain_db(rx) -
           link.pathloss_db - noise_power_dbm(p, num);
}

struct SnrSample {
    double snr_avg_db = kNoSignalDb;
    double snr_inst_db = kNoSignalDb;
    int chunk_index = 0;
    int block_index = 0;
};

inline double nakagami_m(const FadingConfig& f, Regime r) { return r == Regime::los ? f.m_los : f.m_nlos; }

// One detection attempt per repetition chunk. `stream_for_chunk(c)` returns
// the random source dedicated to chunk c, so adding chunks never changes the
// draws of the existing ones.
template <class StreamFactory>
    requires GammaSource<std::invoke_result_t<StreamFactory&, int>>
std::vector<SnrSample> snr_attempts(double snr_avg, int n_rep, Regime regime, const FadingConfig& fading,
                                    StreamFactory&& stream_for_chunk, int block_index = 0) {
    if (n_rep < 1) {
        throw DomainError("n_rep must be >= 1");
    }
    std::vector<SnrSample> out(static_cast<std::size_t>(n_rep));
    for (int c = 0; c < n_rep; ++c) {
        SnrSample& s = out[static_cast<std::size_t>(c)];
        s.snr_avg_db = snr_avg;
        s.chunk_index = c;
        s.block_index = block_index;
        if (!fading.enabled || snr_avg == kNoSignalDb) {
            s.snr_inst_db = snr_avg;
            continue;
        }
        auto rng = stream_for_chunk(c);
        const double m = nakagami_m(fading, regime);
        const double power_gain = rng.gamma(m) / m;
        s.snr_inst_db = snr_avg + 10.0 * std::log10(power_gain);
    }
    return out;
}

} // namespace nr_ia
