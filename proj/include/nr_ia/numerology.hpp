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

#include <algorithm>
#include <array>
#include <string>

#include "nr_ia/error.hpp"

namespace nr_ia {

// Symbol-duration constant in microseconds at 15 kHz. The frame-structure text
// quotes 71.42 us, but every published delay and overhead curve is consistent
// with 71.35 us, which is therefore the default.
inline constexpr double kSymbolConstantUs = 71.35;
inline constexpr double kSymbolConstantNominalUs = 71.42;

inline constexpr int kSymbolsPerSlot = 14;
inline constexpr int kSubcarriersPerSsBlock = 240;
inline constexpr int kSymbolsPerSsBlock = 4;
inline constexpr int kSsBlocksPerSlot = 2;
inline constexpr int kMaxSsBlocksPerBurst = 64;
inline constexpr double kDefaultBandwidthMhz = 400.0;

inline constexpr std::array<int, 4> kAllowedBlocksPerBurst{8, 16, 32, 64};
inline constexpr std::array<double, 6> kAllowedBurstPeriodsMs{5, 10, 20, 40, 80, 160};

// NR frame structure for one subcarrier spacing above 6 GHz.
struct Numerology {
    int n = 3;                // spacing exponent: delta_f = 15 * 2^n kHz
    double delta_f_khz = 120;
    double t_slot_ms = 0.125;
    double t_symb_ms = 0.00891875;
    int symbols_per_slot = kSymbolsPerSlot;

    // Bandwidth of one SS chunk (240 subcarriers) in MHz.
    double ss_chunk_mhz() const { return kSubcarriersPerSsBlock * delta_f_khz / 1000.0; }

    friend bool operator==(const Numerology&, const Numerology&) = default;
};

// Only 120 kHz (n = 3) and 240 kHz (n = 4) are modeled.
inline Numerology make_numerology(int n, double c_symb_us = kSymbolConstantUs) {
    if (n != 3 && n != 4) {
        throw DomainError("numerology exponent must be 3 (120 kHz) or 4 (240 kHz), got " +
                          std::to_string(n));
    }
    if (!(c_symb_us > 0)) {
        throw DomainError("symbol constant must be positive");
    }
    const double scale = static_cast<double>(1 << n);
    Numerology num;
    num.n = n;
    num.delta_f_khz = 15.0 * scale;
    num.t_slot_ms = 1.0 / scale;
    num.t_symb_ms = c_symb_us / scale / 1000.0;
    return num;
}

inline Numerology numerology_for_spacing(double delta_f_khz, double c_symb_us = kSymbolConstantUs) {
    if (delta_f_khz == 120.0) return make_numerology(3, c_symb_us);
    if (delta_f_khz == 240.0) return make_numerology(4, c_symb_us);
    throw DomainError("subcarrier spacing must be 120 or 240 kHz");
}

// Number of SS chunks sent per block: 1 without frequency diversity, otherwise
// as many as the 400 MHz carrier admits (11 at 120 kHz, 5 at 240 kHz).
inline int repetitions(double delta_f_khz, bool diversity, double bandwidth_mhz = kDefaultBandwidthMhz) {
    int n_rep = 1;
    if (delta_f_khz == 120.0) {
        n_rep = diversity ? 11 : 1;
    } else if (delta_f_khz == 240.0) {
        n_rep = diversity ? 5 : 1;
    } else {
        throw DomainError("subcarrier spacing must be 120 or 240 kHz");
    }
    const double occupied_mhz = n_rep * kSubcarriersPerSsBlock * delta_f_khz / 1000.0;
    if (occupied_mhz > bandwidth_mhz) {
        throw DomainError(std::to_string(n_rep) + " SS chunks need " + std::to_string(occupied_mhz) +
                          " MHz but the carrier has " + std::to_string(bandwidth_mhz) + " MHz");
    }
    return n_rep;
}

// 5 ms at 120 kHz, halving with every doubling of the spacing.
inline double max_burst_duration_ms(const Numerology& num) {
    return 5.0 * 120.0 / num.delta_f_khz;
}

struct SsBurstConfig {
    int n_ss = 64;
    double t_ss_ms = 20;
    bool diversity = false;
    int n_rep = 1;
    double bandwidth_mhz = kDefaultBandwidthMhz;

    friend bool operator==(const SsBurstConfig&, const SsBurstConfig&) = default;
};

inline bool is_allowed_blocks_per_burst(int n_ss) {
    return std::find(kAllowedBlocksPerBurst.begin(), kAllowedBlocksPerBurst.end(), n_ss) !=
           kAllowedBlocksPerBurst.end();
}

inline bool is_allowed_burst_period(double t_ss_ms) {
    return std::find(kAllowedBurstPeriodsMs.begin(), kAllowedBurstPeriodsMs.end(), t_ss_ms) !=
           kAllowedBurstPeriodsMs.end();
}

// Builds a validated burst configuration with n_rep derived from the spacing.
inline SsBurstConfig make_ss_burst(int n_ss, double t_ss_ms, bool diversity, const Numerology& num,
                                   double bandwidth_mhz = kDefaultBandwidthMhz) {
    if (!is_allowed_blocks_per_burst(n_ss)) {
        throw DomainError("SS blocks per burst must be one of 8, 16, 32, 64, got " + std::to_string(n_ss));
    }
    if (!is_allowed_burst_period(t_ss_ms)) {
        throw DomainError("SS burst periodicity must be one of 5, 10, 20, 40, 80, 160 ms");
    }
    SsBurstConfig burst;
    burst.n_ss = n_ss;
    burst.t_ss_ms = t_ss_ms;
    burst.diversity = diversity;
    burst.bandwidth_mhz = bandwidth_mhz;
    burst.n_rep = repetitions(num.delta_f_khz, diversity, bandwidth_mhz);
    return burst;
}

} // namespace nr_ia
