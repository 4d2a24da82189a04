#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fakemu/approx.hpp"
#include "fakemu/epsilon_spec.hpp"

namespace fakemu {

struct SieveConfig {
    uint64_t limit = 0;                              // N, inclusive
    uint64_t segmentSize = uint64_t(1) << 22;        // elements per segment
    double checkpointRatio = 1.0100501670841681;     // exp(0.01)
    unsigned workers = 1;
};

struct Checkpoint {
    uint64_t x = 0;
    int64_t F = 0;          // summatory value at x
    double normalized = 0;  // (F - a x)/sqrt(x)
    double u = 0;           // log x
};

struct SieveReport {
    std::string spec;
    uint64_t limit = 0;
    ApproxReal a;  // linear coefficient used for normalization
    ApproxReal b;  // bias the deviations are measured against
    std::vector<Checkpoint> checkpoints;
    // statistics of dev(x) = normalized(x) - b over every integer x <= N
    uint64_t signChanges = 0;  // strict sign flips, zeros skipped
    double minDev = 0, maxDev = 0;
    uint64_t minDevX = 0, maxDevX = 0;
    // largest X with F(x) <= 0 for all x in [42, X]; N when never broken
    uint64_t nonPositiveUpTo = 0;
};

// The geometric sample grid: x_i = floor(ratio^i) bumped to stay strictly
// increasing, clipped at N; always starts at 1 and ends at N.
std::vector<uint64_t> checkpoint_grid(uint64_t limit, double ratio);

// Streams (x, F(x)) for every x = 1..N in ascending order.  Segments are
// sieved concurrently (config.workers at a time) and merged in ascending
// order, so the visit sequence does not depend on the worker count.
void sieve_scan(const EpsilonSpec& spec, const SieveConfig& config,
                const std::function<void(uint64_t x, int64_t F)>& visit);

// Full report: classification-based normalization, geometric checkpoints,
// sign-change count, deviation extrema, and the nonpositivity frontier.
SieveReport sieve_summatory(const EpsilonSpec& spec, const SieveConfig& config);

uint64_t sign_change_count(const SieveReport& report);

// Per-n trial-division oracle; F[x] for x = 0..N (F[0] = 0).  N <= 10^6.
std::vector<int64_t> brute_summatory(const EpsilonSpec& spec, uint64_t limit);

}  // namespace fakemu
