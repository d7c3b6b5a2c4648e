#include "friable/primes.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "friable/errors.hpp"

namespace friable {

std::vector<uint32_t> primes_upto(uint64_t n) {
    if (n > (uint64_t(1) << 32))
        throw capacity_error("primes_upto: bound exceeds 2^32");
    std::vector<uint32_t> out;
    if (n < 2)
        return out;
    std::vector<bool> composite(n + 1, false);
    for (uint64_t i = 2; i * i <= n; ++i) {
        if (composite[i])
            continue;
        for (uint64_t j = i * i; j <= n; j += i)
            composite[j] = true;
    }
    out.reserve(static_cast<size_t>(n > 16 ? 1.3 * n / std::log(double(n)) : 8));
    for (uint64_t i = 2; i <= n; ++i)
        if (!composite[i])
            out.push_back(static_cast<uint32_t>(i));
    return out;
}

namespace {
std::mutex g_prime_mutex;
std::shared_ptr<const std::vector<uint32_t>> g_prime_list;
uint64_t g_prime_bound = 0;
} // namespace

std::shared_ptr<const std::vector<uint32_t>> shared_primes(uint64_t atleast) {
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    if (!g_prime_list || g_prime_bound < atleast) {
        uint64_t bound = std::max<uint64_t>(atleast, 1 << 16);
        if (g_prime_bound > 0 && bound < 2 * g_prime_bound)
            bound = 2 * g_prime_bound;
        g_prime_list = std::make_shared<const std::vector<uint32_t>>(primes_upto(bound));
        g_prime_bound = bound;
    }
    return g_prime_list;
}

uint64_t isqrt64(uint64_t n) {
    if (n == 0)
        return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n && (r + 1) != 0)
        ++r;
    return r;
}

std::vector<PrimePower> factorize(uint64_t n) {
    if (n == 0)
        throw std::domain_error("factorize: n must be >= 1");
    constexpr uint64_t kTrialCap = uint64_t(1) << 21;
    std::vector<PrimePower> out;
    if (n == 1)
        return out;
    const uint64_t root = isqrt64(n);
    if (root > kTrialCap)
        throw capacity_error("factorize: operand too large for trial division");
    auto primes = shared_primes(root);
    uint64_t m = n;
    for (uint32_t p : *primes) {
        if (uint64_t(p) * p > m)
            break;
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (m > 1)
        out.push_back({m, 1});
    return out;
}

uint64_t euler_phi(uint64_t n) {
    uint64_t phi = n;
    for (const auto& pe : factorize(n))
        phi -= phi / pe.p;
    return phi;
}

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod64(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1)
        return 0;
    uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            r = mulmod64(r, base, m);
        base = mulmod64(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace friable
