#pragma once

#include <cstdint>
#include <vector>

namespace fakemu {

struct PrimePower {
    uint64_t p;
    uint32_t k;
};

// Prime factorization with exponents, primes ascending.
using Factorization = std::vector<PrimePower>;

// Trial division with a 2/3/5 wheel.  Rejects n = 0.  factorize(1) is empty.
Factorization factorize(uint64_t n);

bool is_prime(uint64_t n);

// Ascending primes <= n (simple sieve of Eratosthenes).
std::vector<uint64_t> primes_up_to(uint64_t n);

}  // namespace fakemu
