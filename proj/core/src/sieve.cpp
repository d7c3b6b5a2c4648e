#include "friable/sieve.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "friable/errors.hpp"
#include "friable/primes.hpp"

namespace friable {

SmoothTable lpf_sieve(uint64_t lo, uint64_t hi) {
    if (lo < 1 || lo > hi)
        throw std::domain_error("lpf_sieve: need 1 <= lo <= hi");
    if (hi - lo >= kMaxSegment)
        throw capacity_error("lpf_sieve: segment longer than 2^26");

    const size_t len = static_cast<size_t>(hi - lo + 1);
    SmoothTable table;
    table.base = lo;
    table.values.assign(len, 1);

    std::vector<uint64_t> rem(len);
    std::iota(rem.begin(), rem.end(), lo);

    auto primes = shared_primes(isqrt64(hi));
    for (uint32_t p : *primes) {
        const uint64_t pp = p;
        if (pp * pp > hi)
            break;
        uint64_t first = ((lo + pp - 1) / pp) * pp;
        for (uint64_t m = first; m <= hi; m += pp) {
            uint64_t& r = rem[m - lo];
            while (r % pp == 0) {
                r /= pp;
                table.values[m - lo] = pp;
            }
        }
    }
    for (size_t i = 0; i < len; ++i)
        if (rem[i] > 1)
            table.values[i] = rem[i];   // leftover prime exceeds every marked one
    if (lo == 1)
        table.values[0] = 1;
    return table;
}

namespace {

// Walk [1, x] segment by segment and count n with P+(n) <= y passing `pred`.
template <typename Pred>
uint64_t count_smooth(uint64_t x, uint64_t y, Pred&& pred) {
    uint64_t count = 0;
    for (uint64_t lo = 1; lo <= x; lo += kDefaultSegment) {
        const uint64_t hi = std::min(x, lo + kDefaultSegment - 1);
        SmoothTable t = lpf_sieve(lo, hi);
        for (uint64_t n = lo; n <= hi; ++n)
            if (t.values[n - lo] <= y && pred(n))
                ++count;
    }
    return count;
}

} // namespace

uint64_t psi(uint64_t x, uint64_t y) {
    if (x < 1 || y < 1)
        throw std::domain_error("psi: need x >= 1 and y >= 1");
    if (y >= x)
        return x;   // every n <= x is x-smooth
    return count_smooth(x, y, [](uint64_t) { return true; });
}

uint64_t psi_progression(const PsiQuery& q) {
    if (q.x < 1 || q.y < 1 || q.q < 1)
        throw std::domain_error("psi_progression: need x, y, q >= 1");
    if (q.a >= q.q)
        throw std::domain_error("psi_progression: residue must satisfy 0 <= a < q");
    const uint64_t mod = q.q, res = q.a;
    return count_smooth(q.x, q.y, [=](uint64_t n) { return n % mod == res; });
}

std::vector<uint64_t> psi_progression_all(uint64_t x, uint64_t z, uint64_t q) {
    if (x < 1 || z < 1 || q < 1)
        throw std::domain_error("psi_progression_all: need x, z, q >= 1");
    std::vector<uint64_t> counts(q, 0);
    for (uint64_t lo = 1; lo <= x; lo += kDefaultSegment) {
        const uint64_t hi = std::min(x, lo + kDefaultSegment - 1);
        SmoothTable t = lpf_sieve(lo, hi);
        for (uint64_t n = lo; n <= hi; ++n)
            if (t.values[n - lo] <= z)
                ++counts[n % q];
    }
    return counts;
}

uint64_t psi_coprime(uint64_t x, uint64_t z, uint64_t q) {
    if (x < 1 || z < 1 || q < 1)
        throw std::domain_error("psi_coprime: need x, z, q >= 1");
    if (q == 1)
        return psi(x, z);
    return count_smooth(x, z, [=](uint64_t n) { return std::gcd(n, q) == 1; });
}

double von_mangoldt(uint64_t d) {
    if (d < 1)
        throw std::domain_error("von_mangoldt: need d >= 1");
    if (d == 1)
        return 0.0;
    auto f = factorize(d);
    return f.size() == 1 ? std::log(static_cast<double>(f[0].p)) : 0.0;
}

} // namespace friable
