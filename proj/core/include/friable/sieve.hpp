#pragma once

#include <cstdint>
#include <vector>

namespace friable {

inline constexpr uint64_t kMaxSegment     = uint64_t(1) << 26;
inline constexpr uint64_t kDefaultSegment = uint64_t(1) << 22;

// Largest-prime-factor table for one segment [base, base + values.size()).
struct SmoothTable {
    uint64_t base = 1;
    std::vector<uint64_t> values;   // values[i] = P+(base + i), with P+(1) = 1

    uint64_t length() const { return values.size(); }
    uint64_t lpf(uint64_t n) const { return values[n - base]; }
};

// Segmented largest-prime-factor sieve over [lo, hi] (inclusive).
// Capacity: hi - lo < 2^26 per segment.
SmoothTable lpf_sieve(uint64_t lo, uint64_t hi);

// Psi(x, y) = #{1 <= n <= x : P+(n) <= y}, exact.
uint64_t psi(uint64_t x, uint64_t y);

struct PsiQuery {
    uint64_t x = 1;
    uint64_t y = 1;
    uint64_t q = 0;             // modulus; 0 = none
    uint64_t a = 0;             // residue, 0 <= a < q
    bool coprime_only = false;
};

// #{n <= x : P+(n) <= y, n = a (mod q)}, exact.
uint64_t psi_progression(const PsiQuery& q);

// All residue classes of one modulus in a single pass.
std::vector<uint64_t> psi_progression_all(uint64_t x, uint64_t z, uint64_t q);

// #{n <= x : P+(n) <= z, gcd(n, q) = 1}, exact.
uint64_t psi_coprime(uint64_t x, uint64_t z, uint64_t q);

// log p when d = p^k, else 0.
double von_mangoldt(uint64_t d);

} // namespace friable
