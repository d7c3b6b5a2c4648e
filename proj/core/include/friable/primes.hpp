#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace friable {

// Plain Eratosthenes up to n (inclusive).  Desk-scale bound: n <= 2^32.
std::vector<uint32_t> primes_upto(uint64_t n);

// Process-wide cached prime list, grown geometrically on demand.  Snapshot
// semantics: the returned vector never mutates, callers may hold it across
// threads.  Primes are generated once per run up to the needed bound.
std::shared_ptr<const std::vector<uint32_t>> shared_primes(uint64_t atleast);

struct PrimePower {
    uint64_t p;
    int      e;
};

// Trial-division factorization.  Capacity-bounded: refuses n whose second
// largest prime factor could exceed 2^21 undetected (n > ~4.4e12).
std::vector<PrimePower> factorize(uint64_t n);

uint64_t euler_phi(uint64_t n);

uint64_t isqrt64(uint64_t n);

// Modular helpers on 64-bit values (128-bit intermediate products).
uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod64(uint64_t base, uint64_t exp, uint64_t m);

} // namespace friable
