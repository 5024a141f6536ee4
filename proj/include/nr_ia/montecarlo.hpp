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

// Misdetection experiments over Poisson deployments of gNBs around a UE at
// the origin. Each trial draws from its own counter-based streams, so results
// depend only on (scenario, seed) and never on the worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "nr_ia/channel.hpp"
#include "nr_ia/random.hpp"
#include "nr_ia/scenario.hpp"

namespace nr_ia {

struct Point2 {
    double x = 0;
    double y = 0;
};

struct Deployment {
    double lambda_b = 0; // gNB per km^2
    double radius_m = 0;
    std::vector<Point2> gnb_positions; // sorted by distance from the UE
};

// Poisson point process on a disc, generated radially: pi lambda r_k^2 are the
// arrival times of a unit-rate Poisson process, so the count is
// Poisson(lambda pi R^2) and positions come out ordered by distance.
template <UniformSource Rng>
Deployment drop_ppp(double lambda_b_per_km2, double radius_m, Rng& rng) {
    if (!(lambda_b_per_km2 > 0) || !(radius_m > 0)) {
        throw DomainError("gNB density and disc radius must be positive");
    }
    Deployment dep;
    dep.lambda_b = lambda_b_per_km2;
    dep.radius_m = radius_m;
    const double density_m2 = lambda_b_per_km2 * 1e-6;
    double arrival = 0;
    for (;;) {
        arrival += -std::log(rng.uniform());
        const double r = std::sqrt(arrival / (std::numbers::pi * density_m2));
        if (r > radius_m) break;
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        dep.gnb_positions.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return dep;
}

struct TrialOutcome {
    double best_snr_avg_db = kNoSignalDb;
    double best_snr_inst_db = kNoSignalDb;
    bool detected = false;
    int n_gnb = 0;
};

struct Estimate {
    double p_md = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::int64_t n_trials = 0;
    std::vector<double> snr_cdf; // sorted best long-term SNR per trial, -inf for no signal
};

// 95% Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t n, double z = 1.959963984540054) {
    if (n <= 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    const double hi = successes == n ? 1.0 : std::min(1.0, centre + half);
    return {lo, hi};
}

// Index of the SS block, in sweep order, that carries the aligned beam pair
// for a gNB seen at `bearing` (radians) from the UE. Only azimuth matters
// since the UE and gNBs sit on a plane.
inline int aligned_block_index(const Endpoint& gnb, const Endpoint& ue, double bearing) {
    const double two_pi = 2.0 * std::numbers::pi;
    auto wrap = [&](double a) { return a - two_pi * std::floor(a / two_pi); };
    const Directions gd = directions(gnb.array);
    const Directions ud = directions(ue.array);
    const double ue_az = wrap(bearing);
    // Three-sector site; the UE falls in the sector facing it.
    const double gnb_az = std::fmod(wrap(bearing + std::numbers::pi), two_pi / 3.0);
    const int ue_dir = std::min(ud.n_theta - 1, static_cast<int>(ue_az / (two_pi / ud.n_theta)));
    const int gnb_dir = std::min(gd.n_theta - 1, static_cast<int>(gnb_az / (two_pi / 3.0 / gd.n_theta)));
    const int ue_group = ue_dir / parallel_beams(ue.array, ue.arch);
    const int gnb_group = gnb_dir / parallel_beams(gnb.array, gnb.arch);
    return gnb_group * static_cast<int>(sweep_factor(ue)) + ue_group;
}

// Resolved per-scenario quantities shared by all trials.
struct TrialContext {
    Numerology num;
    Endpoint gnb;
    Endpoint ue;
    Endpoint tx;
    Endpoint rx;
    ChannelParams channel;
    int n_rep = 1;
    double lambda_b = 0;
    double radius_m = 0;
    double gamma_db = 0;

    explicit TrialContext(const Scenario& s)
        : num(s.numerology()), gnb(s.gnb()), ue(s.ue()), tx(s.transmitter()), rx(s.receiver()),
          channel(s.channel), n_rep(s.burst.n_rep), lambda_b(s.montecarlo.lambda_b),
          radius_m(s.montecarlo.radius_m), gamma_db(s.montecarlo.gamma_db) {}
};

// Drops one PPP realisation and keeps the best beam pair over all gNBs, SS
// blocks and repetition chunks.
inline TrialOutcome run_trial(const TrialContext& ctx, std::uint64_t seed, std::uint32_t trial) {
    RandomStream dep_rng(seed, {trial, 0, StreamPurpose::deployment, 0});
    const Deployment dep = drop_ppp(ctx.lambda_b, ctx.radius_m, dep_rng);

    TrialOutcome out;
    out.n_gnb = static_cast<int>(dep.gnb_positions.size());
    for (std::size_t g = 0; g < dep.gnb_positions.size(); ++g) {
        const auto gi = static_cast<std::uint32_t>(g);
        const Point2 p = dep.gnb_positions[g];
        const double d = std::hypot(p.x, p.y);
        RandomStream link_rng(seed, {trial, gi, StreamPurpose::link, 0});
        const LinkState link = link_regime(d, ctx.channel, link_rng);
        if (link.regime == Regime::outage) continue;
        const double snr = snr_avg_db(link, ctx.tx, ctx.rx, ctx.channel, ctx.num);
        out.best_snr_avg_db = std::max(out.best_snr_avg_db, snr);
        const int block = aligned_block_index(ctx.gnb, ctx.ue, std::atan2(p.y, p.x));
        const auto attempts = snr_attempts(
            snr, ctx.n_rep, link.regime, ctx.channel.fading,
            [&](int chunk) {
                return RandomStream(seed, {trial, gi, StreamPurpose::fading, static_cast<std::uint32_t>(chunk)});
            },
            block);
        for (const SnrSample& a : attempts) out.best_snr_inst_db = std::max(out.best_snr_inst_db, a.snr_inst_db);
    }
    // No signal at all is never a detection, even with gamma = -inf.
    out.detected = out.best_snr_inst_db != kNoSignalDb && out.best_snr_inst_db >= ctx.gamma_db;
    return out;
}

// Worker count from NR_IA_SIM_WORKERS, else the machine's parallelism.
inline int default_workers() {
    if (const char* env = std::getenv("NR_IA_SIM_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs trials [0, n_trials) split into contiguous ranges over `workers`
// threads. Outcome i always comes from trial i.
inline std::vector<TrialOutcome> simulate_trials(const Scenario& scenario, std::int64_t n_trials, std::uint64_t seed,
                                                 int workers = 0) {
    validate(scenario);
    if (n_trials < 1 || n_trials > 0xFFFFFFFFll) {
        throw DomainError("trial count must be in [1, 2^32)");
    }
    const TrialContext ctx(scenario);
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(n_trials));
    if (workers <= 0) workers = default_workers();
    workers = static_cast<int>(std::min<std::int64_t>(workers, n_trials));

    auto run_range = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            outcomes[static_cast<std::size_t>(t)] = run_trial(ctx, seed, static_cast<std::uint32_t>(t));
        }
    };
    if (workers == 1) {
        run_range(0, n_trials);
        return outcomes;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    const std::int64_t per = (n_trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = std::min<std::int64_t>(n_trials, w * per);
        const std::int64_t end = std::min<std::int64_t>(n_trials, begin + per);
        pool.emplace_back([&, w, begin, end] {
            try {
                run_range(begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return outcomes;
}

inline Estimate summarize(const std::vector<TrialOutcome>& outcomes) {
    Estimate est;
    est.n_trials = static_cast<std::int64_t>(outcomes.size());
    std::int64_t missed = 0;
    est.snr_cdf.reserve(outcomes.size());
    for (const TrialOutcome& o : outcomes) {
        if (!o.detected) ++missed;
        est.snr_cdf.push_back(o.best_snr_avg_db);
    }
    std::sort(est.snr_cdf.begin(), est.snr_cdf.end());
    est.p_md = est.n_trials ? static_cast<double>(missed) / static_cast<double>(est.n_trials) : 0.0;
    std::tie(est.ci_low, est.ci_high) = wilson_interval(missed, est.n_trials);
    return est;
}

inline Estimate run_misdetection(const Scenario& scenario, std::int64_t n_trials, std::uint64_t seed,
                                 int workers = 0) {
    return summarize(simulate_trials(scenario, n_trials, seed, workers));
}

// Sorted best-cell long-term SNR samples (fading excluded).
inline std::vector<double> snr_cdf(const Scenario& scenario, std::int64_t n_trials, std::uint64_t seed,
                                   int workers = 0) {
    return run_misdetection(scenario, n_trials, seed, workers).snr_cdf;
}

struct CdfPoint {
    double snr_db = 0;
    double cdf = 0;
};

// Step points of the empirical CDF, one per distinct sample value.
inline std::vector<CdfPoint> ecdf_points(const std::vector<double>& sorted) {
    std::vector<CdfPoint> out;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        out.push_back({sorted[i], static_cast<double>(i + 1) / n});
    }
    return out;
}

// Compares two runs driven by the same seed (common random numbers): trial i
// of both sees the same deployment, shadowing and fading. `se_paired` is the
// standard error of the difference in misdetection rates under that
// coupling; `se_unpaired` treats the runs as independent samples.
struct PairedComparison {
    double p_better = 0;
    double p_worse = 0;
    double gap = 0;
    double se_paired = 0;
    double se_unpaired = 0;
    std::int64_t only_worse_missed = 0;
    std::int64_t only_better_missed = 0;

    double z_paired() const { return se_paired > 0 ? gap / se_paired : (gap > 0 ? INFINITY : 0.0); }
};

inline PairedComparison compare_paired(const std::vector<TrialOutcome>& better, const std::vector<TrialOutcome>& worse) {
    if (better.size() != worse.size() || better.empty()) {
        throw DomainError("paired comparison needs two non-empty runs of equal length");
    }
    PairedComparison c;
    const double n = static_cast<double>(better.size());
    std::int64_t miss_b = 0;
    std::int64_t miss_w = 0;
    for (std::size_t i = 0; i < better.size(); ++i) {
        const bool mb = !better[i].detected;
        const bool mw = !worse[i].detected;
        miss_b += mb;
        miss_w += mw;
        if (mw && !mb) ++c.only_worse_missed;
        if (mb && !mw) ++c.only_better_missed;
    }
    c.p_better = static_cast<double>(miss_b) / n;
    c.p_worse = static_cast<double>(miss_w) / n;
    c.gap = c.p_worse - c.p_better;
    const double discordant = static_cast<double>(c.only_worse_missed + c.only_better_missed);
    const double var_diff = (discordant / n - c.gap * c.gap) / n;
    c.se_paired = std::sqrt(std::max(0.0, var_diff));
    c.se_unpaired = std::sqrt(c.p_better * (1 - c.p_better) / n + c.p_worse * (1 - c.p_worse) / n);
    return c;
}

// One row of a parameter sweep: either a scenario to run or the reason the
// grid point was rejected.
struct GridPoint {
    std::variant<Scenario, std::string> scenario;
};

struct SweepRow {
    std::size_t index = 0;
    std::variant<Scenario, std::string> scenario;
    std::uint64_t seed = 0;
    Estimate estimate;

    bool ok() const { return std::holds_alternative<Scenario>(scenario); }
    const std::string* error() const { return std::get_if<std::string>(&scenario); }
};

// Evaluates every grid point. Point i uses derive_seed(seed, i) unless
// `common_random_numbers` is set, in which case all points share `seed` and
// are therefore coupled trial by trial. Invalid points yield an error row.
inline std::vector<SweepRow> sweep(const std::vector<GridPoint>& grid, std::int64_t n_trials, std::uint64_t seed,
                                   bool common_random_numbers = false, int workers = 0) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepRow row;
        row.index = i;
        row.scenario = grid[i].scenario;
        row.seed = common_random_numbers ? seed : derive_seed(seed, i);
        if (const auto* s = std::get_if<Scenario>(&row.scenario)) {
            try {
                row.estimate = run_misdetection(*s, n_trials, row.seed, workers);
                row.estimate.snr_cdf.clear();
                row.estimate.snr_cdf.shrink_to_fit();
            } catch (const Error& e) {
                row.scenario = std::string(e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace nr_ia
