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
#include <optional>
#include <string>
#include <string_view>

#include "nr_ia/error.hpp"
#include "nr_ia/geometry.hpp"
#include "nr_ia/numerology.hpp"

namespace nr_ia {

// Measurement framework: standalone or multi-connectivity, downlink (SS
// blocks from the gNB) or uplink (SRSs from the UE). SA-UL is parseable so it
// can be rejected with a meaningful error.
enum class Framework { sa_dl, mc_dl, mc_ul, sa_ul };

inline std::string_view to_string(Framework f) {
    switch (f) {
    case Framework::sa_dl: return "SA-DL";
    case Framework::mc_dl: return "MC-DL";
    case Framework::mc_ul: return "MC-UL";
    case Framework::sa_ul: return "SA-UL";
    }
    return "?";
}

inline std::optional<Framework> parse_framework(std::string_view text) {
    if (text == "SA-DL") return Framework::sa_dl;
    if (text == "MC-DL") return Framework::mc_dl;
    if (text == "MC-UL") return Framework::mc_ul;
    if (text == "SA-UL") return Framework::sa_ul;
    return std::nullopt;
}

inline bool is_uplink(Framework f) { return f == Framework::mc_ul || f == Framework::sa_ul; }
inline bool is_standalone(Framework f) { return f == Framework::sa_dl || f == Framework::sa_ul; }

inline void require_supported(Framework f) {
    if (f == Framework::sa_ul) {
        throw DomainError("SA-UL is not a supported framework: uplink measurements need the LTE overlay");
    }
}

struct SweepDelay {
    double t_ia_ms = 0;
    std::int64_t bursts_used = 1;
    std::int64_t n_ss_left = 1;
    double t_last_ms = 0;
};

// Beam-reporting resources. Zero for slots_per_period / period_ms means
// "same as the SS burst" (n_ss and t_ss respectively).
struct RachConfig {
    double occasion_slot_ms = 0.0625;
    int opportunities_per_slot = 2;
    int slots_per_period = 0;
    double period_ms = 0;
    double mc_latency_ms = 10.0;
    double bandwidth_mhz = 10.0;
    // Time-frequency footprint of one RACH occasion, calibrated to the
    // reporting-overhead table (fraction 0.0894e-3 of 20 ms x 400 MHz).
    double occasion_resource_ms_mhz = 0.7149;

    friend bool operator==(const RachConfig&, const RachConfig&) = default;
};

inline constexpr double kMinLteLatencyMs = 0.8;
inline constexpr double kMaxLteLatencyMs = 10.5;

// Time to send the blocks of the final burst. Two blocks share a slot; the
// second of a pair ends two symbols before the slot boundary, a lone block
// ends six symbols into its slot.
inline double t_last(std::int64_t n_ss_left, const Numerology& num) {
    if (n_ss_left < 1) {
        throw DomainError("remaining SS blocks must be >= 1");
    }
    const auto full_slots = static_cast<double>(n_ss_left / 2);
    if (n_ss_left % 2 == 0) {
        return full_slots * num.t_slot_ms - 2.0 * num.t_symb_ms;
    }
    return full_slots * num.t_slot_ms + 6.0 * num.t_symb_ms;
}

// Delay from the start of the first burst until all s_d blocks have been sent.
inline SweepDelay t_ia(std::int64_t s_d, const SsBurstConfig& burst, const Numerology& num) {
    if (s_d < 1) {
        throw DomainError("S_D must be >= 1");
    }
    const std::int64_t n_ss = burst.n_ss;
    SweepDelay out;
    out.bursts_used = (s_d + n_ss - 1) / n_ss;
    out.n_ss_left = s_d - n_ss * (out.bursts_used - 1);
    out.t_last_ms = t_last(out.n_ss_left, num);
    out.t_ia_ms = burst.t_ss_ms * static_cast<double>(out.bursts_used - 1) + out.t_last_ms;
    return out;
}

// RACH occasion-slots the gNB must schedule so the UE can report towards any
// of its directions.
inline std::int64_t report_slots(int gnb_dirs, const BeamformingArch& arch, int k_bf, const RachConfig& rach) {
    if (gnb_dirs < 1) {
        throw DomainError("gNB direction count must be >= 1");
    }
    const std::int64_t per_slot = rach.opportunities_per_slot;
    switch (arch.kind) {
    case ArchKind::digital:
    case ArchKind::omni: return 1;
    case ArchKind::analog: return (gnb_dirs + per_slot - 1) / per_slot;
    case ArchKind::hybrid: {
        const std::int64_t groups = (gnb_dirs + k_bf - 1) / k_bf;
        return (groups + per_slot - 1) / per_slot;
    }
    }
    return 1;
}

inline double beam_report_delay_sa(int gnb_dirs, const BeamformingArch& arch, int k_bf, const RachConfig& rach) {
    const std::int64_t slots = report_slots(gnb_dirs, arch, k_bf, rach);
    const std::int64_t per_period = rach.slots_per_period;
    if (per_period < 1 || !(rach.period_ms > 0) || !(rach.occasion_slot_ms > 0)) {
        throw DomainError("RACH configuration has unresolved or non-positive period fields");
    }
    const std::int64_t extra_periods = (slots + per_period - 1) / per_period - 1;
    const std::int64_t slots_in_last = slots - per_period * extra_periods;
    return rach.period_ms * static_cast<double>(extra_periods) +
           static_cast<double>(slots_in_last) * rach.occasion_slot_ms;
}

inline double beam_report_delay_sa(const Endpoint& gnb, const RachConfig& rach) {
    return beam_report_delay_sa(directions(gnb.array).total(), gnb.arch, parallel_beams(gnb.array, gnb.arch),
                                rach);
}

// With multi-connectivity the report travels over LTE.
inline double beam_report_delay_mc(const RachConfig& rach) { return rach.mc_latency_ms; }

// Fills the "same as burst" RACH fields.
inline RachConfig resolve_rach(RachConfig rach, const SsBurstConfig& burst) {
    if (rach.slots_per_period == 0) rach.slots_per_period = burst.n_ss;
    if (rach.period_ms == 0) rach.period_ms = burst.t_ss_ms;
    return rach;
}

inline double beam_report_delay(Framework f, const Endpoint& gnb, const RachConfig& rach) {
    require_supported(f);
    return is_standalone(f) ? beam_report_delay_sa(gnb, rach) : beam_report_delay_mc(rach);
}

inline double total_ia_delay(Framework f, const SweepDelay& sweep, double report_ms) {
    require_supported(f);
    return sweep.t_ia_ms + report_ms;
}

} // namespace nr_ia
