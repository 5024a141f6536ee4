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
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nr_ia/error.hpp"

namespace nr_ia {

enum class Role { gnb, ue };

enum class ArchKind { analog, hybrid, digital, omni };

inline std::string_view to_string(ArchKind kind) {
    switch (kind) {
    case ArchKind::analog: return "analog";
    case ArchKind::hybrid: return "hybrid";
    case ArchKind::digital: return "digital";
    case ArchKind::omni: return "omni";
    }
    return "?";
}

inline std::optional<ArchKind> parse_arch(std::string_view text) {
    if (text == "analog") return ArchKind::analog;
    if (text == "hybrid") return ArchKind::hybrid;
    if (text == "digital") return ArchKind::digital;
    if (text == "omni") return ArchKind::omni;
    return std::nullopt;
}

inline constexpr double kGnbAzimuthDeg = 120.0; // one sector of a three-sector site
inline constexpr double kUeAzimuthDeg = 360.0;
inline constexpr double kElevationDeg = 60.0;
inline constexpr double kDefaultHybridNu = 2.0;

// 3 dB beamwidth of a uniform planar array with m elements. m = 1 is an
// omnidirectional element and has no entry.
inline std::optional<double> beamwidth_deg(int m) {
    switch (m) {
    case 4: return 60.0;
    case 16: return 26.0;
    case 64: return 13.0;
    default: return std::nullopt;
    }
}

inline bool is_supported_array_size(int m) { return m == 1 || beamwidth_deg(m).has_value(); }

struct ArrayConfig {
    int m = 1;
    double beamwidth_deg = 360.0;
    double az_range_deg = kUeAzimuthDeg;
    double el_range_deg = kElevationDeg;
    int n_theta = 1;
    int n_phi = 1;

    int total_directions() const { return n_theta * n_phi; }
};

struct BeamformingArch {
    ArchKind kind = ArchKind::analog;
    double nu = kDefaultHybridNu;
};

// An array together with the way it forms beams.
struct Endpoint {
    ArrayConfig array;
    BeamformingArch arch;
};

struct Directions {
    int n_theta = 1;
    int n_phi = 1;
    int total() const { return n_theta * n_phi; }
};

// Number of beams needed to tile an angular range; the small epsilon keeps an
// exact multiple (120 / 60) from rounding up on floating-point noise.
inline int beams_to_cover(double range_deg, double beamwidth) {
    return static_cast<int>(std::ceil(range_deg / beamwidth - 1e-9));
}

inline ArrayConfig make_array(int m, Role role) {
    ArrayConfig array;
    array.m = m;
    array.az_range_deg = role == Role::gnb ? kGnbAzimuthDeg : kUeAzimuthDeg;
    array.el_range_deg = kElevationDeg;
    if (m == 1) {
        array.beamwidth_deg = 360.0;
        array.n_theta = 1;
        array.n_phi = 1;
        return array;
    }
    const auto width = beamwidth_deg(m);
    if (!width) {
        throw DomainError("unsupported array size m=" + std::to_string(m) + " (expected 1, 4, 16 or 64)");
    }
    array.beamwidth_deg = *width;
    array.n_theta = beams_to_cover(array.az_range_deg, *width);
    array.n_phi = beams_to_cover(array.el_range_deg, *width);
    return array;
}

inline Directions directions(const ArrayConfig& array) {
    if (array.m == 1) return {1, 1};
    const auto width = beamwidth_deg(array.m);
    if (!width) {
        throw DomainError("unsupported array size m=" + std::to_string(array.m));
    }
    return {beams_to_cover(array.az_range_deg, *width), beams_to_cover(array.el_range_deg, *width)};
}

// Simultaneous beams K_BF the transceiver can form while sweeping.
inline int parallel_beams(const ArrayConfig& array, const BeamformingArch& arch) {
    const int dirs = directions(array).total();
    const int cap = std::min(dirs, array.m);
    switch (arch.kind) {
    case ArchKind::analog: return 1;
    case ArchKind::digital:
    case ArchKind::omni: return std::max(1, cap);
    case ArchKind::hybrid: return std::max(1, static_cast<int>(std::floor(cap / arch.nu)));
    }
    return 1;
}

inline Endpoint make_endpoint(int m, Role role, ArchKind kind, double nu = kDefaultHybridNu) {
    if (kind == ArchKind::omni && m != 1) {
        throw DomainError("omni architecture requires a single element (m=1)");
    }
    if (kind == ArchKind::hybrid && !(nu >= 1.0)) {
        throw DomainError("hybrid limiting factor nu must be >= 1");
    }
    // A single element cannot steer, whatever the nominal architecture.
    if (m == 1) kind = ArchKind::omni;
    return {make_array(m, role), {kind, nu}};
}

// SS blocks per endpoint: its directions swept K_BF at a time.
inline std::int64_t sweep_factor(const Endpoint& e) {
    const std::int64_t dirs = directions(e.array).total();
    const std::int64_t k = parallel_beams(e.array, e.arch);
    return (dirs + k - 1) / k;
}

// Total SS blocks S_D needed to visit every gNB x UE beam pair.
inline std::int64_t sweep_blocks(const Endpoint& gnb, const Endpoint& ue) {
    return sweep_factor(gnb) * sweep_factor(ue);
}

} // namespace nr_ia
