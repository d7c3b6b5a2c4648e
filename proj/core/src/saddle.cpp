#include "friable/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "friable/errors.hpp"
#include "friable/primes.hpp"
#include "friable/sieve.hpp"

namespace friable {

namespace {

double saddle_sum(const std::vector<uint32_t>& primes, double z, double alpha) {
    double s = 0.0;
    for (uint32_t p : primes) {
        if (p > z)
            break;
        s += std::log(static_cast<double>(p)) / (std::pow(static_cast<double>(p), alpha) - 1.0);
    }
    return s;
}

} // namespace

SaddleContext solve_saddle(double x, double z) {
    if (!(x >= 2.0) || !std::isfinite(x))
        throw std::domain_error("solve_saddle: need x >= 2");
    if (!(z >= 2.0) || !std::isfinite(z))
        throw std::domain_error("solve_saddle: need z >= 2");
    auto primes = shared_primes(static_cast<uint64_t>(z));
    const double target = std::log(x);

    // The sum is strictly decreasing in alpha; bracket then bisect.
    double lo = 1e-6, hi = 3.0;
    if (saddle_sum(*primes, z, hi) > target)
        throw std::domain_error("solve_saddle: saddle point above 3 (z too large for x)");
    if (saddle_sum(*primes, z, lo) < target)
        throw std::domain_error("solve_saddle: saddle point below 1e-6");
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (saddle_sum(*primes, z, mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    SaddleContext ctx;
    ctx.x = x;
    ctx.z = z;
    ctx.alpha = 0.5 * (lo + hi);
    ctx.residual = saddle_sum(*primes, z, ctx.alpha) - target;
    if (std::abs(ctx.residual) > 1e-9 * target)
        throw std::runtime_error("solve_saddle: bisection did not meet the residual bound");
    return ctx;
}

double g_d(const SaddleContext& ctx, uint64_t d) {
    if (d < 1)
        throw std::domain_error("g_d: d must be >= 1");
    double g = 1.0;
    for (const auto& pe : factorize(d))
        g *= 1.0 - std::pow(static_cast<double>(pe.p), -ctx.alpha);
    return g;
}

double gamma_shifted(const SaddleContext& ctx, uint64_t d) {
    if (d < 1)
        throw std::domain_error("gamma_shifted: d must be >= 1");
    double g = 1.0;
    for (const auto& pe : factorize(d)) {
        const double p = static_cast<double>(pe.p);
        g *= (1.0 - std::pow(p, -ctx.alpha)) * p / (p - 1.0);
    }
    return g;
}

void ShiftedConfig::validate() const {
    if (a == 0)
        throw std::domain_error("ShiftedConfig: shift a must be nonzero");
    if (!std::isfinite(u) || !std::isfinite(v) || u < 1.0 || v < 1.0)
        throw std::domain_error("ShiftedConfig: need finite u, v >= 1");
    profile.validate();
}

uint64_t smoothness_threshold(uint64_t x, double u) {
    if (x < 1 || !(u >= 1.0))
        throw std::domain_error("smoothness_threshold: need x >= 1 and u >= 1");
    const long double t = std::powl(static_cast<long double>(x), 1.0L / u);
    auto y = static_cast<uint64_t>(t + 1e-9L);
    // exactness guard around integer powers
    while (y > 1 && std::powl(static_cast<long double>(y), u) > x * (1.0L + 1e-12L))
        --y;
    return std::max<uint64_t>(y, 1);
}

uint64_t psi_pairs_thresholds(uint64_t x, uint64_t y1, uint64_t y2, long long a) {
    if (x < 1 || y1 < 1 || y2 < 1)
        throw std::domain_error("psi_pairs: need x, y1, y2 >= 1");
    if (a == 0)
        throw std::domain_error("psi_pairs: shift must be nonzero");
    if (x > 100000000)
        throw capacity_error("psi_pairs: x beyond the 10^8 desk budget");

    uint64_t count = 0;
    for (uint64_t lo = 1; lo <= x; lo += kDefaultSegment) {
        const uint64_t hi = std::min(x, lo + kDefaultSegment - 1);
        SmoothTable base = lpf_sieve(lo, hi);
        // shifted companion segment, clipped to positive integers
        const long long slo_s = static_cast<long long>(lo) + a;
        const long long shi_s = static_cast<long long>(hi) + a;
        if (shi_s < 1)
            continue;
        const uint64_t slo = static_cast<uint64_t>(std::max<long long>(slo_s, 1));
        const uint64_t shi = static_cast<uint64_t>(shi_s);
        SmoothTable shifted = lpf_sieve(slo, shi);
        for (uint64_t n = lo; n <= hi; ++n) {
            if (base.values[n - lo] > y1)
                continue;
            const long long m = static_cast<long long>(n) + a;
            if (m < 1)
                continue;   // nonpositive shifts are excluded
            if (shifted.lpf(static_cast<uint64_t>(m)) <= y2)
                ++count;
        }
    }
    return count;
}

uint64_t psi_pairs(uint64_t x, const ShiftedConfig& cfg) {
    cfg.validate();
    const uint64_t y1 = smoothness_threshold(x, cfg.u);
    const uint64_t y2 = smoothness_threshold(x, cfg.v);
    if (y1 < 2 || y2 < 2)
        throw std::domain_error("psi_pairs: x^(1/u) and x^(1/v) must be >= 2");
    return psi_pairs_thresholds(x, y1, y2, cfg.a);
}

double theorem_f(double u, Regime regime) {
    if (!std::isfinite(u))
        throw std::domain_error("theorem_f: u must be finite");
    switch (regime) {
    case Regime::harper_half:
        if (u <= 1.0 || u > 2.0)
            throw std::domain_error("theorem_f: harper_half needs 1 < u <= 2");
        return 1.0 - u / 2.0;
    case Regime::pascadi_58: {
        if (u <= 1.0 || u > 8.0 / 3.0)
            throw std::domain_error("theorem_f: pascadi_58 needs 1 < u <= 8/3");
        double f = 1.0 - 3.0 / 8.0 * u;
        if (u > 8.0 / 5.0)
            f += std::log(1.0 / u + 3.0 / 8.0);
        if (u > 2.0)
            f += 3.0 / 8.0 * u * std::log(u / 2.0);
        return f;
    }
    }
    throw std::domain_error("theorem_f: unknown regime");
}

namespace {

// Bitmap of z-smooth integers on [1, limit].
std::vector<bool> smooth_flags(uint64_t limit, uint64_t z) {
    std::vector<bool> flags(limit + 1, false);
    for (uint64_t lo = 1; lo <= limit; lo += kDefaultSegment) {
        const uint64_t hi = std::min(limit, lo + kDefaultSegment - 1);
        SmoothTable t = lpf_sieve(lo, hi);
        for (uint64_t n = lo; n <= hi; ++n)
            flags[n] = t.values[n - lo] <= z;
    }
    return flags;
}

} // namespace

double remainder_shifted(const SaddleContext& ctx, uint64_t d, uint64_t x, uint64_t z,
                         long long a) {
    if (d < 1 || x < 1 || z < 1)
        throw std::domain_error("remainder_shifted: need d, x, z >= 1");
    if (a == 0)
        throw std::domain_error("remainder_shifted: shift must be nonzero");
    const long long limit_s = static_cast<long long>(x) + a;
    const uint64_t limit = limit_s < 1 ? 0 : static_cast<uint64_t>(limit_s);
    auto flags = smooth_flags(std::max<uint64_t>(limit, 1), z);

    uint64_t a_d = 0;
    for (uint64_t n = d; n <= x; n += d) {
        const long long m = static_cast<long long>(n) + a;
        if (m >= 1 && m <= static_cast<long long>(limit) && flags[static_cast<uint64_t>(m)])
            ++a_d;
    }
    const double main = static_cast<double>(psi(x, z)) * g_d(ctx, d) /
                        static_cast<double>(euler_phi(d));
    return static_cast<double>(a_d) - main;
}

ShiftedRemainderReport shifted_remainder_report(const SaddleContext& ctx, uint64_t x,
                                                uint64_t z, long long a, uint64_t D,
                                                bool coprime_only) {
    if (x < 1 || z < 1 || D < 1)
        throw std::domain_error("shifted_remainder_report: need x, z, D >= 1");
    if (a == 0)
        throw std::domain_error("shifted_remainder_report: shift must be nonzero");

    const long long limit_s = static_cast<long long>(x) + std::max<long long>(a, 0);
    const uint64_t limit = static_cast<uint64_t>(std::max<long long>(limit_s, 1));
    auto flags = smooth_flags(limit, z);
    const double psi_xz = static_cast<double>(psi(x, z));
    const uint64_t amag = static_cast<uint64_t>(a < 0 ? -a : a);

    ShiftedRemainderReport rep;
    rep.psi_xz = psi_xz;
    rep.reference = psi_xz / std::log(static_cast<double>(z));
    for (uint64_t d = 1; d <= D; ++d) {
        if (coprime_only && std::gcd(d, amag) != 1)
            continue;
        uint64_t set_count = 0;
        for (uint64_t n = d; n <= x; n += d) {
            const long long m = static_cast<long long>(n) + a;
            if (m >= 1 && m <= static_cast<long long>(limit) && flags[static_cast<uint64_t>(m)])
                ++set_count;
        }
        // progression convention: z-smooth m <= x with m = a (mod d)
        uint64_t prog_count = 0;
        const uint64_t res = static_cast<uint64_t>(((a % static_cast<long long>(d)) +
                                                    static_cast<long long>(d)) %
                                                   static_cast<long long>(d));
        for (uint64_t m = (res == 0 ? d : res); m <= x; m += d)
            if (flags[m])
                ++prog_count;
        const double main = psi_xz * g_d(ctx, d) / static_cast<double>(euler_phi(d));
        ShiftedRemainderRow row;
        row.d = d;
        row.r_set = static_cast<double>(set_count) - main;
        row.r_prog = static_cast<double>(prog_count) - main;
        rep.rows.push_back(row);
        rep.abs_sum_set += std::abs(row.r_set);
        rep.abs_sum_prog += std::abs(row.r_prog);
    }
    return rep;
}

} // namespace friable
