#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "fakemu/epsilon_spec.hpp"
#include "fakemu/factorize.hpp"
#include "fakemu/sieve.hpp"

using namespace fakemu;

namespace {

uint64_t isqrt_u(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool squarefree(uint64_t n) {
    for (const auto& pp : factorize(n))
        if (pp.k > 1) return false;
    return true;
}

// independent count of powerful numbers <= N: a^2 b^3 with b squarefree
uint64_t powerful_count(uint64_t N) {
    uint64_t count = 0;
    for (uint64_t b = 1; b * b * b <= N; ++b)
        if (squarefree(b)) count += isqrt_u(N / (b * b * b));
    return count;
}

void check_scan_equals_brute(const EpsilonSpec& spec, uint64_t N,
                             uint64_t segmentSize, unsigned workers) {
    std::vector<int64_t> expected = brute_summatory(spec, N);
    SieveConfig cfg;
    cfg.limit = N;
    cfg.segmentSize = segmentSize;
    cfg.workers = workers;
    uint64_t mismatches = 0, seen = 0;
    sieve_scan(spec, cfg, [&](uint64_t x, int64_t F) {
        ++seen;
        if (F != expected[x] && mismatches++ == 0) {
            CAPTURE(x);
            CHECK(F == expected[x]);
        }
    });
    CHECK(mismatches == 0);
    CHECK(seen == N);
}

EpsilonSpec random_spec(std::mt19937& rng) {
    std::uniform_int_distribution<int> val(-1, 1);
    std::uniform_int_distribution<int> plen(2, 8);
    std::uniform_int_distribution<int> kind(0, 2);
    std::vector<int> prefix(plen(rng));
    for (auto& e : prefix) e = val(rng);
    switch (kind(rng)) {
        case 0: return EpsilonSpec(prefix, ConstantTail{val(rng)});
        case 1: {
            std::uniform_int_distribution<int> len(1, 4);
            std::vector<int> pat(len(rng));
            for (auto& e : pat) e = val(rng);
            return EpsilonSpec(prefix, PeriodicTail{pat});
        }
        default: {
            std::uniform_int_distribution<int> r(3, 9);
            return EpsilonSpec(prefix, MuRTail{r(rng)});
        }
    }
}

bool reports_identical(const SieveReport& p, const SieveReport& q) {
    if (p.spec != q.spec || p.limit != q.limit) return false;
    if (p.a.value != q.a.value || p.a.errBound != q.a.errBound) return false;
    if (p.b.value != q.b.value || p.b.errBound != q.b.errBound) return false;
    if (p.signChanges != q.signChanges) return false;
    if (p.minDev != q.minDev || p.maxDev != q.maxDev) return false;
    if (p.minDevX != q.minDevX || p.maxDevX != q.maxDevX) return false;
    if (p.nonPositiveUpTo != q.nonPositiveUpTo) return false;
    if (p.checkpoints.size() != q.checkpoints.size()) return false;
    for (size_t i = 0; i < p.checkpoints.size(); ++i) {
        const Checkpoint &c = p.checkpoints[i], &d = q.checkpoints[i];
        if (c.x != d.x || c.F != d.F || c.normalized != d.normalized ||
            c.u != d.u)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("brute force matches hand-computed values") {
    std::vector<int64_t> mu = brute_summatory(builtin("mu"), 10);
    std::vector<int64_t> muExpect = {0, 1, 0, -1, -1, -2, -1, -2, -2, -2, -1};
    CHECK(mu == muExpect);

    std::vector<int64_t> lam = brute_summatory(builtin("lambda"), 10);
    std::vector<int64_t> lamExpect = {0, 1, 0, -1, 0, -1, 0, -1, -2, -1, 0};
    CHECK(lam == lamExpect);

    std::vector<int64_t> xi = brute_summatory(builtin("xi"), 4);
    std::vector<int64_t> xiExpect = {0, 1, 0, -1, -2};
    CHECK(xi == xiExpect);

    CHECK(brute_summatory(builtin("mu_squared"), 8)[8] == 6);
    CHECK(brute_summatory(builtin("fake_Max"), 50)[50] == 10);

    std::vector<int64_t> fmin = brute_summatory(builtin("fake_min"), 12);
    std::vector<int64_t> fminExpect = {0, 1, 0, -1, 0, -1, 0,
                                       -1, 0, 1, 2, 1, 0};
    CHECK(fmin == fminExpect);
}

TEST_CASE("sieve agrees with brute force for all builtins") {
    for (const std::string& name : builtin_names()) {
        CAPTURE(name);
        check_scan_equals_brute(builtin(name), 100000, uint64_t(1) << 14, 1);
    }
    check_scan_equals_brute(builtin_mu_r(4), 100000, uint64_t(1) << 14, 1);
}

TEST_CASE("sieve agrees with brute force on random specs") {
    std::mt19937 rng(20240819);
    for (int i = 0; i < 10; ++i) {
        EpsilonSpec spec = random_spec(rng);
        check_scan_equals_brute(spec, 20000, 4096, i % 2 ? 3 : 1);
    }
}

TEST_CASE("segment boundaries do not disturb the scan") {
    check_scan_equals_brute(builtin("mu"), 17, 4, 1);
    check_scan_equals_brute(builtin("lambda"), 16, 16, 2);
    check_scan_equals_brute(builtin("fake_min"), 1000, uint64_t(1) << 22, 1);
    check_scan_equals_brute(builtin("xi"), 2, 2, 1);
}

TEST_CASE("checkpoint grid is geometric, distinct, and ends at N") {
    std::vector<uint64_t> grid = checkpoint_grid(10000, 1.0100501670841681);
    CHECK(grid.size() == 923);
    CHECK(grid.front() == 1);
    CHECK(grid.back() == 10000);
    for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);

    CHECK(checkpoint_grid(2, 1.5) == std::vector<uint64_t>{1, 2});
    std::vector<uint64_t> g97 = checkpoint_grid(97, 2.0);
    CHECK(g97.back() == 97);
    CHECK_THROWS_AS(checkpoint_grid(100, 1.0), std::invalid_argument);
}

TEST_CASE("report statistics match an independent pass") {
    const uint64_t N = 10000;
    SieveConfig cfg;
    cfg.limit = N;
    cfg.segmentSize = 1 << 14;
    SieveReport rep = sieve_summatory(builtin("lambda"), cfg);

    CHECK(rep.limit == N);
    CHECK(rep.spec == "lambda");
    CHECK(rep.checkpoints.size() == 923);
    CHECK(rep.checkpoints.back().x == N);
    CHECK(sign_change_count(rep) == rep.signChanges);
    CHECK(rep.signChanges >= 1);
    CHECK(rep.minDev <= rep.maxDev);

    std::vector<int64_t> expected = brute_summatory(builtin("lambda"), N);
    double minDev = HUGE_VAL, maxDev = -HUGE_VAL;
    uint64_t minX = 0, maxX = 0, flips = 0;
    int last = 0;
    for (uint64_t x = 1; x <= N; ++x) {
        const double dx = static_cast<double>(x);
        const double dev = (static_cast<double>(expected[x]) -
                            rep.a.value * dx) /
                               std::sqrt(dx) -
                           rep.b.value;
        if (dev < minDev) {
            minDev = dev;
            minX = x;
        }
        if (dev > maxDev) {
            maxDev = dev;
            maxX = x;
        }
        const int s = dev > 0.0 ? 1 : dev < 0.0 ? -1 : 0;
        if (s) {
            if (last && s != last) ++flips;
            last = s;
        }
    }
    CHECK(rep.minDev == minDev);
    CHECK(rep.maxDev == maxDev);
    CHECK(rep.minDevX == minX);
    CHECK(rep.maxDevX == maxX);
    CHECK(rep.signChanges == flips);

    for (const Checkpoint& cp : rep.checkpoints) {
        CHECK(cp.F == expected[cp.x]);
        CHECK(std::llabs(cp.F) <= static_cast<int64_t>(cp.x));
        CHECK(cp.u == std::log(static_cast<double>(cp.x)));
        const double dx = static_cast<double>(cp.x);
        CHECK(cp.normalized ==
              (static_cast<double>(cp.F) - rep.a.value * dx) / std::sqrt(dx));
    }
}

TEST_CASE("mu oscillates about zero and fake_min stays nonpositive") {
    const uint64_t N = 10000;
    SieveConfig cfg;
    cfg.limit = N;
    cfg.segmentSize = 1 << 14;

    SieveReport mu = sieve_summatory(builtin("mu"), cfg);
    CHECK(mu.b.value == 0.0);
    CHECK(mu.signChanges >= 1);
    std::vector<int64_t> muF = brute_summatory(builtin("mu"), N);
    uint64_t frontier = N;
    for (uint64_t x = 42; x <= N; ++x)
        if (muF[x] > 0) {
            frontier = x - 1;
            break;
        }
    CHECK(mu.nonPositiveUpTo == frontier);

    SieveReport fmin = sieve_summatory(builtin("fake_min"), cfg);
    CHECK(fmin.nonPositiveUpTo == N);
    std::vector<int64_t> fminF = brute_summatory(builtin("fake_min"), N);
    for (uint64_t x = 42; x <= N; ++x) CHECK(fminF[x] <= 0);

    SieveReport one = sieve_summatory(builtin("one"), cfg);
    for (const Checkpoint& cp : one.checkpoints)
        CHECK(cp.F == static_cast<int64_t>(cp.x));
}

TEST_CASE("powerful number counts cross-check the fake_Max sieve") {
    SieveConfig cfg;
    cfg.limit = 1000000;
    int64_t f4 = 0, f5 = 0, f6 = 0;
    sieve_scan(builtin("fake_Max"), cfg, [&](uint64_t x, int64_t F) {
        if (x == 10000) f4 = F;
        if (x == 100000) f5 = F;
        if (x == 1000000) f6 = F;
    });
    CHECK(f4 == 185);
    CHECK(f5 == 619);
    CHECK(f6 == 2027);
    CHECK(f4 == static_cast<int64_t>(powerful_count(10000)));
    CHECK(f5 == static_cast<int64_t>(powerful_count(100000)));
    CHECK(f6 == static_cast<int64_t>(powerful_count(1000000)));
}

TEST_CASE("reports are identical across workers and segment sizes") {
    SieveConfig base;
    base.limit = 30000;
    SieveReport ref = sieve_summatory(builtin("lambda"), base);
    for (unsigned workers : {1u, 2u, 8u}) {
        for (uint64_t seg : {uint64_t(1) << 14, uint64_t(1) << 22}) {
            SieveConfig cfg = base;
            cfg.workers = workers;
            cfg.segmentSize = seg;
            CAPTURE(workers);
            CAPTURE(seg);
            CHECK(reports_identical(ref, sieve_summatory(builtin("lambda"),
                                                         cfg)));
        }
    }
    CHECK(reports_identical(ref, sieve_summatory(builtin("lambda"), base)));
}

TEST_CASE("configuration guards") {
    SieveConfig cfg;
    cfg.limit = 1;
    CHECK_THROWS_AS(sieve_summatory(builtin("mu"), cfg),
                    std::invalid_argument);
    cfg.limit = 100;
    cfg.segmentSize = 1;
    CHECK_THROWS_AS(sieve_summatory(builtin("mu"), cfg),
                    std::invalid_argument);
    cfg.segmentSize = uint64_t(1) << 30;
    CHECK_THROWS_AS(sieve_summatory(builtin("mu"), cfg),
                    std::invalid_argument);
    cfg.segmentSize = 1 << 14;
    cfg.checkpointRatio = 1.0;
    CHECK_THROWS_AS(sieve_summatory(builtin("mu"), cfg),
                    std::invalid_argument);
    cfg.checkpointRatio = 1.01;
    cfg.workers = 0;
    CHECK_THROWS_AS(sieve_summatory(builtin("mu"), cfg),
                    std::invalid_argument);
    cfg.workers = 1;
    cfg.limit = uint64_t(5000) * 1000 * 1000 * 1000 * 1000;
    CHECK_THROWS_AS(sieve_summatory(builtin("mu"), cfg),
                    std::invalid_argument);

    CHECK_THROWS_AS(brute_summatory(builtin("mu"), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_summatory(builtin("mu"), 2000000),
                    std::invalid_argument);
}
