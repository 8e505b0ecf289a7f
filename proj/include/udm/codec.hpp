#pragma once

/**
 * @file codec.hpp
 * @brief Encoding over L parallel prefix-erasure channels and decoding from what survives.
 *
 * Channel l carries x_l = A_l u. The receiver sees the first k_l symbols of each
 * x_l intact and nothing of the rest, then solves the stacked linear system.
 */

#include <udm/error.hpp>
#include <udm/gf.hpp>
#include <udm/linalg.hpp>
#include <udm/tuples.hpp>
#include <udm/udm.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>
#include <vector>

namespace udm {

struct ChannelObservation {
    std::size_t k = 0;
    std::vector<Element> symbols;  // length k

    friend bool operator==(const ChannelObservation&, const ChannelObservation&) = default;
};

struct ChannelOutput {
    std::vector<ChannelObservation> channels;

    [[nodiscard]] ErasureTuple tuple() const
    {
        ErasureTuple t;
        for (const auto& c : channels) t.ks.push_back(c.k);
        return t;
    }

    friend bool operator==(const ChannelOutput&, const ChannelOutput&) = default;
};

inline std::vector<Vector> encode(const UdmFamily& family, const Vector& u)
{
    if (u.size() != family.n())
        throw Error(Errc::DimensionMismatch,
                    "information vector has length " + std::to_string(u.size()) + ", expected " +
                        std::to_string(family.n()));
    std::vector<Vector> out;
    out.reserve(family.L());
    for (const auto& a : family.matrices()) out.push_back(matvec(a, u));
    return out;
}

/// Keeps the first k_l symbols of each x_l.
inline ChannelOutput erase(std::span<const Vector> x, const ErasureTuple& k)
{
    if (x.size() != k.ks.size())
        throw Error(Errc::BadTuple, "tuple " + to_string(k) + " does not match " + std::to_string(x.size()) +
                                        " channels");
    ChannelOutput obs;
    for (std::size_t l = 0; l < x.size(); ++l) {
        if (k.ks[l] > x[l].size())
            throw Error(Errc::BadTuple, "tuple " + to_string(k) + " exceeds the block length");
        auto e = x[l].entries();
        obs.channels.push_back({k.ks[l], std::vector<Element>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k.ks[l]))});
    }
    return obs;
}

/**
 * Solves the stacked system of surviving rows.
 * Throws InsufficientSymbols when fewer than n symbols survive; RankDeficient can
 * only occur for families that are not UDMs, Inconsistent only for corrupted input.
 */
inline Vector decode(const UdmFamily& family, const ChannelOutput& obs)
{
    if (obs.channels.size() != family.L())
        throw Error(Errc::BadTuple, "observation has " + std::to_string(obs.channels.size()) + " channels, family has " +
                                        std::to_string(family.L()));
    const ErasureTuple k = obs.tuple();
    check_tuple(k, family.L(), family.n());
    for (const auto& c : obs.channels)
        if (c.symbols.size() != c.k) throw Error(Errc::ParseError, "channel symbol count differs from its k");
    if (k.weight() < family.n())
        throw Error(Errc::InsufficientSymbols, std::to_string(k.weight()) + " symbols received, " +
                                                   std::to_string(family.n()) + " needed");
    const Matrix a = stack_prefixes(family.matrices(), k.ks);
    std::vector<Element> y;
    y.reserve(k.weight());
    for (const auto& c : obs.channels) y.insert(y.end(), c.symbols.begin(), c.symbols.end());
    return solve(a, Vector(family.field(), std::move(y)));
}

// ---------------------------------------------------------------------------
// Simulation

/// Counter-based stream: trial t of seed s always yields the same draws.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial) noexcept
        : state_(mix(seed ^ mix(trial + 0x9e3779b97f4a7c15ULL)))
    {
    }

    std::uint64_t next() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t v;
        do v = next();
        while (v >= limit);
        return v % bound;
    }

    /// Uniform in [0, 1).
    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Draws an erasure tuple for L channels of block length n.
using PatternSource = std::function<ErasureTuple(TrialRng&, std::size_t L, std::size_t n)>;

/// Each k_l uniform on [0, n], independently.
inline PatternSource uniform_box_patterns()
{
    return [](TrialRng& rng, std::size_t L, std::size_t n) {
        ErasureTuple k;
        for (std::size_t l = 0; l < L; ++l) k.ks.push_back(static_cast<std::size_t>(rng.below(n + 1)));
        return k;
    };
}

/// Uniform over the tuples summing to exactly n (stars and bars).
inline PatternSource uniform_exact_patterns()
{
    return [](TrialRng& rng, std::size_t L, std::size_t n) {
        const std::size_t slots = n + L - 1;
        std::vector<std::size_t> pos(slots);
        std::iota(pos.begin(), pos.end(), std::size_t{0});
        for (std::size_t r = 0; r + 1 < L; ++r) std::swap(pos[r], pos[r + static_cast<std::size_t>(rng.below(slots - r))]);
        std::vector<std::size_t> bars(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(L - 1));
        std::sort(bars.begin(), bars.end());
        ErasureTuple k;
        std::size_t prev = 0;
        for (auto b : bars) {
            k.ks.push_back(b - prev);
            prev = b + 1;
        }
        k.ks.push_back(slots - prev);
        return k;
    };
}

/// Each symbol survives with probability 1 - p_erase until the first erasure; capped at n.
inline PatternSource truncated_geometric_patterns(double p_erase)
{
    if (!(p_erase >= 0.0 && p_erase <= 1.0)) throw Error(Errc::BadTuple, "erasure probability outside [0,1]");
    return [p_erase](TrialRng& rng, std::size_t L, std::size_t n) {
        ErasureTuple k;
        for (std::size_t l = 0; l < L; ++l) {
            std::size_t v = 0;
            while (v < n && rng.unit() >= p_erase) ++v;
            k.ks.push_back(v);
        }
        return k;
    };
}

struct SimulationStats {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t failures_insufficient = 0;
    std::uint64_t failures_rank_deficient = 0;
    std::uint64_t failures_inconsistent = 0;
    /// Decodes that returned a vector different from the transmitted one.
    std::uint64_t wrong_decodes = 0;
    std::uint64_t weight_sum = 0;
    /// histogram[w] counts trials whose tuple sums to w.
    std::vector<std::uint64_t> weight_histogram;

    [[nodiscard]] double mean_weight() const noexcept
    {
        return trials ? static_cast<double>(weight_sum) / static_cast<double>(trials) : 0.0;
    }
    [[nodiscard]] double success_rate() const noexcept
    {
        return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    }

    void merge(const SimulationStats& o)
    {
        trials += o.trials;
        successes += o.successes;
        failures_insufficient += o.failures_insufficient;
        failures_rank_deficient += o.failures_rank_deficient;
        failures_inconsistent += o.failures_inconsistent;
        wrong_decodes += o.wrong_decodes;
        weight_sum += o.weight_sum;
        if (weight_histogram.size() < o.weight_histogram.size()) weight_histogram.resize(o.weight_histogram.size(), 0);
        for (std::size_t w = 0; w < o.weight_histogram.size(); ++w) weight_histogram[w] += o.weight_histogram[w];
    }

    friend bool operator==(const SimulationStats&, const SimulationStats&) = default;
};

/// One encode / erase / decode round for a uniformly random u.
inline void run_trial(const UdmFamily& family, const PatternSource& patterns, std::uint64_t seed, std::uint64_t trial,
                      SimulationStats& stats)
{
    TrialRng rng(seed, trial);
    const ErasureTuple k = patterns(rng, family.L(), family.n());
    Vector u(family.field(), family.n());
    for (std::size_t t = 0; t < family.n(); ++t)
        u[t] = Element{static_cast<std::uint32_t>(rng.below(family.field().order()))};

    ++stats.trials;
    const std::size_t w = k.weight();
    stats.weight_sum += w;
    stats.weight_histogram[w] += 1;
    try {
        const Vector decoded = decode(family, erase(encode(family, u), k));
        if (decoded == u)
            ++stats.successes;
        else
            ++stats.wrong_decodes;
    } catch (const Error& e) {
        switch (e.code()) {
        case Errc::InsufficientSymbols: ++stats.failures_insufficient; break;
        case Errc::RankDeficient: ++stats.failures_rank_deficient; break;
        case Errc::Inconsistent: ++stats.failures_inconsistent; break;
        default: throw;
        }
    }
}

/// Deterministic for a given seed, independent of `workers`.
inline SimulationStats simulate(const UdmFamily& family, std::uint64_t trials, const PatternSource& patterns,
                                std::uint64_t seed, unsigned workers = 1)
{
    auto fresh = [&] {
        SimulationStats s;
        s.weight_histogram.assign(family.L() * family.n() + 1, 0);
        return s;
    };
    workers = std::max(1u, workers);
    if (workers == 1 || trials < workers) {
        SimulationStats stats = fresh();
        for (std::uint64_t t = 0; t < trials; ++t) run_trial(family, patterns, seed, t, stats);
        return stats;
    }
    std::vector<SimulationStats> parts(workers, fresh());
    {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                const std::uint64_t begin = w * chunk;
                const std::uint64_t end = std::min(trials, begin + chunk);
                for (std::uint64_t t = begin; t < end; ++t) run_trial(family, patterns, seed, t, parts[w]);
            });
        }
    }
    SimulationStats stats = fresh();
    for (const auto& p : parts) stats.merge(p);
    return stats;
}

}  // namespace udm
