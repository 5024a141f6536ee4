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

#include "nr_ia/error.hpp"
#include "nr_ia/geometry.hpp"
#include "nr_ia/numerology.hpp"
#include "nr_ia/sweep_timing.hpp"

namespace nr_ia {

inline constexpr double kOverheadWindowMs = 5.0;

struct OverheadResult {
    double omega_5ms = 0;
    double omega_tss = 0;
    double r_ss_ms_mhz = 0; // time-frequency resources taken by one burst
};

// Share of the time-frequency grid occupied by SS blocks, over the 5 ms burst
// window and over the full burst period. The 5 ms window is used even at
// 240 kHz where the burst itself lasts at most 2.5 ms.
inline OverheadResult ss_overhead(const SsBurstConfig& burst, const Numerology& num) {
    const double delta_f_mhz = num.delta_f_khz / 1000.0;
    OverheadResult out;
    out.r_ss_ms_mhz = burst.n_ss * kSymbolsPerSsBlock * num.t_symb_ms * kSubcarriersPerSsBlock * burst.n_rep *
                      delta_f_mhz;
    out.omega_5ms = out.r_ss_ms_mhz / (kOverheadWindowMs * burst.bandwidth_mhz);
    out.omega_tss = out.r_ss_ms_mhz / (burst.t_ss_ms * burst.bandwidth_mhz);
    if (out.omega_5ms > 1.0) {
        throw DomainError("SS burst configuration exceeds the available resources (overhead > 1)");
    }
    return out;
}

// Standalone beam reporting: one RACH occasion per scheduled occasion-slot.
// The footprint of an occasion does not depend on the RACH bandwidth (10 or
// 20 MHz): a wider allocation comes with proportionally shorter symbols.
inline double report_overhead_sa(int gnb_dirs, const BeamformingArch& arch, int k_bf, double rach_bw_mhz,
                                 double t_ss_ms, double bandwidth_mhz, const RachConfig& rach = {}) {
    if (rach_bw_mhz != 10.0 && rach_bw_mhz != 20.0) {
        throw DomainError("RACH bandwidth must be 10 or 20 MHz");
    }
    if (!(t_ss_ms > 0) || !(bandwidth_mhz > 0)) {
        throw DomainError("overhead window and bandwidth must be positive");
    }
    const auto slots = static_cast<double>(report_slots(gnb_dirs, arch, k_bf, rach));
    return slots * rach.occasion_resource_ms_mhz / (t_ss_ms * bandwidth_mhz);
}

inline double report_overhead_sa(const Endpoint& gnb, double rach_bw_mhz, double t_ss_ms, double bandwidth_mhz,
                                 const RachConfig& rach = {}) {
    return report_overhead_sa(directions(gnb.array).total(), gnb.arch, parallel_beams(gnb.array, gnb.arch),
                              rach_bw_mhz, t_ss_ms, bandwidth_mhz, rach);
}

// Multi-connectivity needs a single RACH occasion, over the same 20 ms x
// 400 MHz reference frame used for the standalone figures.
inline double report_overhead_mc(const RachConfig& rach = {}, double t_ss_ms = 20.0,
                                 double bandwidth_mhz = kDefaultBandwidthMhz) {
    return rach.occasion_resource_ms_mhz / (t_ss_ms * bandwidth_mhz);
}

} // namespace nr_ia
