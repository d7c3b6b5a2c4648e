#include "friable/reference.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "friable/quadrature.hpp"

namespace friable::reference {

double rho_iterated(double u, double tol) {
    if (!(u >= 0.0))
        throw std::domain_error("rho_iterated: u must be nonnegative");
    if (u <= 1.0)
        return 1.0;
    const int mmax = static_cast<int>(std::ceil(u)) - 1;
    std::vector<double> base(mmax + 1, 1.0);   // rho at integers 0..mmax

    std::function<double(double)> rho = [&](double t) -> double {
        if (t <= 1.0)
            return 1.0;
        const int m = static_cast<int>(std::ceil(t)) - 1;   // t in (m, m+1]
        return base[m] - adaptive_simpson(
                             [&](double s) { return rho(s - 1.0) / s; },
                             static_cast<double>(m), t, tol, 1e-14, 1 << 16);
    };
    for (int m = 2; m <= mmax; ++m)
        base[m] = base[m - 1] - adaptive_simpson(
                                    [&](double s) { return rho(s - 1.0) / s; },
                                    static_cast<double>(m - 1), static_cast<double>(m),
                                    tol, 1e-14, 1 << 16);
    return rho(u);
}

double gamma_quadrature(double x, double tol) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_quadrature: x must be positive");
    // [0,1] with the substitution t = w^(1/x) integrates the endpoint
    // singularity exactly; the tail is truncated far beyond machine epsilon.
    const double head = adaptive_simpson(
        [&](double w) { return std::exp(-std::pow(w, 1.0 / x)) / x; }, 0.0, 1.0, tol, tol,
        1 << 16);
    const double cut = 40.0 + 10.0 * x;
    const double tail = adaptive_simpson(
        [&](double t) { return std::pow(t, x - 1.0) * std::exp(-t); }, 1.0, cut, tol, tol,
        1 << 16);
    return head + tail;
}

uint64_t largest_prime_factor(uint64_t n) {
    if (n == 0)
        throw std::domain_error("largest_prime_factor: n must be >= 1");
    uint64_t best = 1;
    for (uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            best = p;
            n /= p;
        }
    return n > 1 ? n : best;
}

bool is_smooth(uint64_t n, uint64_t y) {
    return largest_prime_factor(n) <= y;
}

uint64_t psi_enumeration(uint64_t x, uint64_t y) {
    uint64_t c = 0;
    for (uint64_t n = 1; n <= x; ++n)
        if (is_smooth(n, y))
            ++c;
    return c;
}

std::vector<uint64_t> roots_mod_brute(const IntPolynomial& F, uint64_t m) {
    std::vector<uint64_t> roots;
    for (uint64_t r = 0; r < m; ++r) {
        __int128 acc = 0;
        for (size_t i = F.c.size(); i-- > 0;) {
            acc = acc * static_cast<__int128>(r) + F.c[i];
            acc %= static_cast<__int128>(m);
        }
        if (acc % static_cast<__int128>(m) == 0)
            roots.push_back(r);
    }
    return roots;
}

uint64_t psi_poly_enumeration(const IntPolynomial& F, uint64_t x, uint64_t y) {
    uint64_t c = 0;
    for (uint64_t n = 1; n <= x; ++n) {
        const uint64_t v = F.eval_abs64(static_cast<long long>(n));
        if (v != 0 && is_smooth(v, y))
            ++c;
    }
    return c;
}

uint64_t psi_binary_enumeration(const BinaryForm& F, uint64_t x, uint64_t y,
                                bool coprime_only) {
    uint64_t c = 0;
    for (uint64_t a = 1; a <= x; ++a)
        for (uint64_t b = 1; b <= x; ++b) {
            if (coprime_only && std::gcd(a, b) != 1)
                continue;
            const uint64_t v = F.eval_abs64(static_cast<long long>(a),
                                            static_cast<long long>(b));
            if (v != 0 && is_smooth(v, y))
                ++c;
        }
    return c;
}

} // namespace friable::reference
