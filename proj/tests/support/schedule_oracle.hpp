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

// Brute-force SS block placement on a symbol timeline. Bursts start every
// T_SS; inside a burst, blocks fill consecutive slots two at a time. Each
// slot is split in two halves: symbols of the first half are laid out from
// the slot start, symbols of the second half from the slot end, so any
// excess of the slot over 14 symbol durations sits in the middle.

#include <cstdint>
#include <stdexcept>

#include "nr_ia/numerology.hpp"

namespace oracle {

struct Placement {
    double end_ms = 0;        // end of the last block needed
    std::int64_t bursts = 0;  // bursts touched
    double max_offset_ms = 0; // latest block end relative to its burst start
};

inline double symbol_start(int symbol, double slot_start, const nr_ia::Numerology& num) {
    constexpr int half = nr_ia::kSymbolsPerSlot / 2;
    if (symbol < half) return slot_start + symbol * num.t_symb_ms;
    return slot_start + num.t_slot_ms - (nr_ia::kSymbolsPerSlot - symbol) * num.t_symb_ms;
}

// Walks blocks one by one until `s_d` of them have been sent.
inline Placement place_blocks(std::int64_t s_d, const nr_ia::SsBurstConfig& burst, const nr_ia::Numerology& num) {
    constexpr int kFirstSymbol[2] = {2, 8};
    if (s_d < 1) throw std::invalid_argument("s_d must be positive");
    Placement p;
    std::int64_t sent = 0;
    for (std::int64_t b = 0;; ++b) {
        const double burst_start = static_cast<double>(b) * burst.t_ss_ms;
        p.bursts = b + 1;
        for (int k = 0; k < burst.n_ss; ++k) {
            const int slot = k / 2;
            const double slot_start = burst_start + slot * num.t_slot_ms;
            const int last_symbol = kFirstSymbol[k % 2] + nr_ia::kSymbolsPerSsBlock - 1;
            const double end = symbol_start(last_symbol, slot_start, num) + num.t_symb_ms;
            if (end - burst_start > p.max_offset_ms) p.max_offset_ms = end - burst_start;
            if (++sent == s_d) {
                p.end_ms = end;
                return p;
            }
        }
    }
}

} // namespace oracle
