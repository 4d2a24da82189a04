#include "fakemu/factorize.hpp"

#include <stdexcept>

namespace fakemu {

Factorization factorize(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization out;
    auto strip = [&](uint64_t p) {
        if (n % p) return;
        uint32_t k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.push_back({p, k});
    };
    strip(2);
    strip(3);
    strip(5);
    static const uint32_t wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    uint64_t p = 7;
    int w = 0;
    while (p * p <= n) {
        strip(p);
        p += wheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].k == 1;
}

std::vector<uint64_t> primes_up_to(uint64_t n) {
    std::vector<uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (uint64_t q = p * p; q <= n; q += p) composite[q] = true;
    }
    return out;
}

}  // namespace fakemu
