#include "fakemu/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <stdexcept>

#include "fakemu/classify.hpp"
#include "fakemu/factorize.hpp"

namespace fakemu {

namespace {

constexpr uint64_t kMaxLimit = uint64_t(4500) * 1000 * 1000 * 1000 * 1000;
constexpr uint64_t kMaxSegment = uint64_t(1) << 26;
constexpr size_t kMaxCheckpoints = 20 * 1000 * 1000;

void validate_config(const SieveConfig& cfg) {
    if (cfg.limit < 2)
        throw std::invalid_argument("sieve: limit must be >= 2");
    if (cfg.limit > kMaxLimit)
        throw std::invalid_argument(
            "sieve: limit exceeds the prime-table budget; reduce limit");
    if (cfg.segmentSize < 2 || cfg.segmentSize > kMaxSegment)
        throw std::invalid_argument(
            "sieve: segmentSize must be in [2, 2^26]");
    if (!(cfg.checkpointRatio > 1.0))
        throw std::invalid_argument("sieve: checkpointRatio must exceed 1");
    if (cfg.workers < 1 || cfg.workers > 64)
        throw std::invalid_argument("sieve: workers must be in [1, 64]");
}

uint64_t isqrt(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Values f(n) for n in [lo, hi): divide each element by its primes up to
// sqrt(N), multiplying in eps[multiplicity]; whatever cofactor remains is a
// single prime beyond the table and contributes eps[1].
std::vector<int8_t> segment_values(uint64_t lo, uint64_t hi,
                                   const std::vector<uint64_t>& primes,
                                   const std::array<int, 64>& eps) {
    const size_t len = static_cast<size_t>(hi - lo);
    std::vector<int8_t> acc(len, 1);
    std::vector<uint64_t> cof(len);
    for (size_t i = 0; i < len; ++i) cof[i] = lo + i;
    for (uint64_t p : primes) {
        uint64_t first = ((lo + p - 1) / p) * p;
        for (uint64_t j = first; j < hi; j += p) {
            const size_t idx = static_cast<size_t>(j - lo);
            uint64_t c = cof[idx];
            uint32_t k = 0;
            do {
                c /= p;
                ++k;
            } while (c % p == 0);
            cof[idx] = c;
            acc[idx] = static_cast<int8_t>(acc[idx] * eps[k]);
        }
    }
    for (size_t i = 0; i < len; ++i)
        if (cof[i] > 1) acc[i] = static_cast<int8_t>(acc[i] * eps[1]);
    return acc;
}

template <class Visitor>
void run_segments(const EpsilonSpec& spec, const SieveConfig& cfg,
                  Visitor&& visit) {
    validate_config(cfg);
    const uint64_t N = cfg.limit;
    const std::vector<uint64_t> primes = primes_up_to(isqrt(N));
    std::array<int, 64> eps{};
    for (uint64_t k = 0; k < eps.size(); ++k)
        eps[k] = spec.epsilon_at(k);

    const uint64_t segCount = (N + cfg.segmentSize - 1) / cfg.segmentSize;
    std::vector<std::future<std::vector<int8_t>>> pending(segCount);
    const auto policy =
        cfg.workers > 1 ? std::launch::async : std::launch::deferred;
    auto launch = [&](uint64_t s) {
        const uint64_t lo = 1 + s * cfg.segmentSize;
        const uint64_t hi = std::min(N + 1, lo + cfg.segmentSize);
        pending[s] = std::async(policy, [lo, hi, &primes, eps] {
            return segment_values(lo, hi, primes, eps);
        });
    };

    uint64_t launched = 0;
    int64_t F = 0;
    for (uint64_t s = 0; s < segCount; ++s) {
        while (launched < segCount && launched < s + cfg.workers)
            launch(launched++);
        const std::vector<int8_t> vals = pending[s].get();
        pending[s] = {};
        const uint64_t lo = 1 + s * cfg.segmentSize;
        for (size_t i = 0; i < vals.size(); ++i) {
            F += vals[i];
            visit(lo + i, F);
        }
    }
}

}  // namespace

std::vector<uint64_t> checkpoint_grid(uint64_t limit, double ratio) {
    if (limit < 1) throw std::invalid_argument("checkpoint_grid: empty range");
    if (!(ratio > 1.0))
        throw std::invalid_argument("checkpoint_grid: ratio must exceed 1");
    const double lr = std::log(ratio);
    std::vector<uint64_t> xs;
    uint64_t prev = 0;
    for (uint64_t i = 0;; ++i) {
        const double t = std::exp(lr * static_cast<double>(i));
        uint64_t x = t >= 1.8e19 ? limit
                                 : static_cast<uint64_t>(std::floor(t));
        x = std::min(limit, std::max(prev + 1, x));
        xs.push_back(x);
        prev = x;
        if (x >= limit) break;
        if (xs.size() > kMaxCheckpoints)
            throw std::invalid_argument(
                "checkpoint_grid: ratio too close to 1 for this limit");
    }
    return xs;
}

void sieve_scan(const EpsilonSpec& spec, const SieveConfig& config,
                const std::function<void(uint64_t, int64_t)>& visit) {
    run_segments(spec, config, [&](uint64_t x, int64_t F) { visit(x, F); });
}

SieveReport sieve_summatory(const EpsilonSpec& spec,
                            const SieveConfig& config) {
    const BiasClassification cls = classify(spec);
    const std::vector<uint64_t> grid =
        checkpoint_grid(config.limit, config.checkpointRatio);

    SieveReport rep;
    rep.spec = spec.name();
    rep.limit = config.limit;
    rep.a = cls.a;
    rep.b = cls.b;
    rep.checkpoints.reserve(grid.size());
    rep.minDev = HUGE_VAL;
    rep.maxDev = -HUGE_VAL;

    const double aV = cls.a.value, bV = cls.b.value;
    size_t gi = 0;
    int lastSign = 0;
    bool broken = false;
    run_segments(spec, config, [&](uint64_t x, int64_t F) {
        const double dx = static_cast<double>(x);
        const double norm =
            (static_cast<double>(F) - aV * dx) / std::sqrt(dx);
        const double dev = norm - bV;
        if (dev < rep.minDev) {
            rep.minDev = dev;
            rep.minDevX = x;
        }
        if (dev > rep.maxDev) {
            rep.maxDev = dev;
            rep.maxDevX = x;
        }
        const int s = dev > 0.0 ? 1 : dev < 0.0 ? -1 : 0;
        if (s) {
            if (lastSign && s != lastSign) ++rep.signChanges;
            lastSign = s;
        }
        if (!broken && x >= 42 && F > 0) {
            broken = true;
            rep.nonPositiveUpTo = x - 1;
        }
        if (gi < grid.size() && x == grid[gi]) {
            rep.checkpoints.push_back({x, F, norm, std::log(dx)});
            ++gi;
        }
    });
    if (!broken) rep.nonPositiveUpTo = config.limit;
    return rep;
}

uint64_t sign_change_count(const SieveReport& report) {
    return report.signChanges;
}

std::vector<int64_t> brute_summatory(const EpsilonSpec& spec,
                                     uint64_t limit) {
    if (limit < 1 || limit > 1000000)
        throw std::invalid_argument(
            "brute_summatory: limit must be in [1, 10^6]");
    std::vector<int64_t> F(limit + 1, 0);
    int64_t run = 0;
    for (uint64_t n = 1; n <= limit; ++n) {
        run += eval(spec, n);
        F[n] = run;
    }
    return F;
}

}  // namespace fakemu
