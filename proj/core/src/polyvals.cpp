#include "friable/polyvals.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "friable/errors.hpp"
#include "friable/primes.hpp"

namespace friable {

namespace {

constexpr uint64_t kBruteRootCap  = 1000000;      // largest modulus for residue scans
constexpr uint64_t kScanBudget    = 2000000000;   // total residues scanned per sieve call
constexpr uint64_t kU63           = uint64_t(1) << 63;

std::vector<long long> parse_coeff_list(const std::string& spec) {
    std::vector<long long> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        long long v = std::stoll(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
            ++pos;
        if (pos != item.size())
            throw std::invalid_argument("trailing characters in coefficient '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("empty coefficient list");
    return out;
}

uint64_t mod_norm(long long c, uint64_t m) {
    long long r = c % static_cast<long long>(m);
    if (r < 0)
        r += static_cast<long long>(m);
    return static_cast<uint64_t>(r);
}

// Horner evaluation of F mod m.
uint64_t poly_eval_mod(const std::vector<long long>& c, uint64_t x, uint64_t m) {
    uint64_t acc = 0;
    for (size_t i = c.size(); i-- > 0;)
        acc = (mulmod64(acc, x, m) + mod_norm(c[i], m)) % m;
    return acc;
}

std::vector<long long> derivative(const std::vector<long long>& c) {
    std::vector<long long> d;
    for (size_t i = 1; i < c.size(); ++i)
        d.push_back(c[i] * static_cast<long long>(i));
    if (d.empty())
        d.push_back(0);
    return d;
}

int legendre_symbol(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0)
        return 0;
    const uint64_t e = powmod64(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

// Square root mod an odd prime (Tonelli-Shanks); requires (a|p) = 1.
uint64_t sqrt_mod(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0)
        return 0;
    if (p % 4 == 3)
        return powmod64(a, (p + 1) / 4, p);
    uint64_t q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    uint64_t z = 2;
    while (legendre_symbol(z, p) != -1)
        ++z;
    uint64_t m = s;
    uint64_t c = powmod64(z, q, p);
    uint64_t t = powmod64(a, q, p);
    uint64_t r = powmod64(a, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod64(tt, tt, p);
            ++i;
        }
        uint64_t b = powmod64(c, uint64_t(1) << (m - i - 1), p);
        m = i;
        c = mulmod64(b, b, p);
        t = mulmod64(t, c, p);
        r = mulmod64(r, b, p);
    }
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t m) {
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(m), newr = static_cast<long long>(a % m);
    while (newr != 0) {
        long long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1)
        throw std::domain_error("inv_mod: not invertible");
    return static_cast<uint64_t>(t < 0 ? t + static_cast<long long>(m) : t);
}

// Residue scan of F over Z/mZ via a finite-difference table (g additions per
// residue).  The scan budget guards pathological prime loops.
std::vector<uint64_t> roots_scan(const std::vector<long long>& c, uint64_t m,
                                 uint64_t* budget) {
    if (m > kBruteRootCap)
        throw capacity_error("roots_mod: residue scan beyond 10^6");
    if (budget) {
        if (*budget < m)
            throw capacity_error("roots_mod: residue-scan budget exhausted");
        *budget -= m;
    }
    if (m < c.size() + 2 || m < 16) {
        std::vector<uint64_t> roots;
        for (uint64_t x = 0; x < m; ++x)
            if (poly_eval_mod(c, x, m) == 0)
                roots.push_back(x);
        return roots;
    }
    const size_t g = c.size() - 1;
    std::vector<uint64_t> diff(g + 1);
    std::vector<uint64_t> init(g + 1);
    for (size_t j = 0; j <= g; ++j)
        init[j] = poly_eval_mod(c, j % m, m);
    for (size_t j = 0; j <= g; ++j)
        diff[j] = init[j];
    for (size_t lvl = 1; lvl <= g; ++lvl)
        for (size_t j = g; j >= lvl; --j)
            diff[j] = (diff[j] - diff[j - 1] + m) % m;
    std::vector<uint64_t> roots;
    for (uint64_t x = 0; x < m; ++x) {
        if (diff[0] == 0)
            roots.push_back(x);
        for (size_t j = 0; j < g; ++j)
            diff[j] = (diff[j] + diff[j + 1]) % m;
    }
    return roots;
}

// Roots of F mod a prime.  Degree-drop mod p is honored; fast closed forms
// cover effective degree <= 2 so the scan budget is spent only on g >= 3.
std::vector<uint64_t> roots_mod_prime(const IntPolynomial& F, uint64_t p, uint64_t* budget) {
    std::vector<uint64_t> cr(F.c.size());
    for (size_t i = 0; i < F.c.size(); ++i)
        cr[i] = mod_norm(F.c[i], p);
    size_t deg = cr.size();
    while (deg > 0 && cr[deg - 1] == 0)
        --deg;
    if (deg == 0) {
        // F vanishes identically mod p
        if (p > kBruteRootCap)
            throw capacity_error("roots_mod: content divisible by a large prime");
        std::vector<uint64_t> all(p);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    if (deg == 1)
        return cr[0] == 0 ? std::vector<uint64_t>{0} : std::vector<uint64_t>{};
    if (p == 2) {
        std::vector<uint64_t> roots;
        for (uint64_t x = 0; x < 2; ++x)
            if (poly_eval_mod(F.c, x, 2) == 0)
                roots.push_back(x);
        return roots;
    }
    if (deg == 2) {
        const uint64_t a = cr[1], b = cr[0];   // x^2*... wait: cr[2] x^2 + cr[1] x + cr[0]
        const uint64_t qa = cr[2];
        const uint64_t disc = (mulmod64(a, a, p) + 4 * p - 4 * mulmod64(qa, b, p) % p) % p;
        const int chi = legendre_symbol(disc, p);
        if (chi == -1)
            return {};
        const uint64_t inv2a = inv_mod(mulmod64(2, qa, p), p);
        const uint64_t nb = (p - a) % p;
        if (chi == 0)
            return {mulmod64(nb, inv2a, p)};
        const uint64_t s = sqrt_mod(disc, p);
        uint64_t r1 = mulmod64((nb + s) % p, inv2a, p);
        uint64_t r2 = mulmod64((nb + p - s) % p, inv2a, p);
        if (r1 > r2)
            std::swap(r1, r2);
        return {r1, r2};
    }
    if (deg == 3 && cr[0] == 0) {
        // x * quadratic: split off the zero root
        IntPolynomial Q{{static_cast<long long>(cr[1]), static_cast<long long>(cr[2]),
                         static_cast<long long>(cr[3])}};
        auto roots = roots_mod_prime(Q, p, budget);
        if (std::find(roots.begin(), roots.end(), 0ull) == roots.end())
            roots.push_back(0);
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    return roots_scan(F.c, p, budget);
}

// Lift roots from mod p^j to mod p^(j+1).
std::vector<uint64_t> hensel_step(const IntPolynomial& F, const std::vector<long long>& Fd,
                                  uint64_t p, uint64_t pj, const std::vector<uint64_t>& roots) {
    const uint64_t pnext = pj * p;
    std::vector<uint64_t> out;
    for (uint64_t r : roots) {
        const uint64_t fd = poly_eval_mod(Fd, r % p, p);
        if (fd != 0) {
            // simple root: unique lift
            const uint64_t fr = poly_eval_mod(F.c, r, pnext);
            const uint64_t t = mulmod64((fr / pj) % p, p - inv_mod(fd, p), p) % p;
            out.push_back(r + t * pj);
        } else {
            if (pnext > kBruteRootCap)
                throw capacity_error("roots_mod: degenerate Hensel lift beyond 10^6");
            for (uint64_t t = 0; t < p; ++t) {
                const uint64_t cand = r + t * pj;
                if (poly_eval_mod(F.c, cand, pnext) == 0)
                    out.push_back(cand);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint64_t> roots_mod_prime_power(const IntPolynomial& F, uint64_t p, int e,
                                            uint64_t* budget) {
    std::vector<uint64_t> roots = roots_mod_prime(F, p, budget);
    std::vector<long long> Fd = derivative(F.c);
    uint64_t pj = p;
    for (int j = 1; j < e; ++j) {
        if (roots.empty())
            return roots;
        roots = hensel_step(F, Fd, p, pj, roots);
        pj *= p;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace

// ---------------------------------------------------------------------------

void IntPolynomial::validate() const {
    if (c.size() < 2)
        throw std::domain_error("IntPolynomial: degree must be >= 1");
    if (c.back() == 0)
        throw std::domain_error("IntPolynomial: leading coefficient must be nonzero");
}

__int128 IntPolynomial::eval(long long n) const {
    __int128 acc = 0;
    for (size_t i = c.size(); i-- > 0;)
        acc = acc * n + c[i];
    return acc;
}

uint64_t IntPolynomial::eval_abs64(long long n) const {
    __int128 v = eval(n);
    if (v < 0)
        v = -v;
    if (static_cast<unsigned __int128>(v) >= kU63)
        throw capacity_error("IntPolynomial: |F(n)| does not fit 63 bits");
    return static_cast<uint64_t>(v);
}

IntPolynomial IntPolynomial::parse(const std::string& spec) {
    IntPolynomial F{parse_coeff_list(spec)};
    F.validate();
    return F;
}

void BinaryForm::validate() const {
    if (c.size() < 3)
        throw std::domain_error("BinaryForm: degree must be >= 2");
    if (c.back() == 0)
        throw std::domain_error("BinaryForm: coefficient of X^t must be nonzero");
}

__int128 BinaryForm::eval(long long a, long long b) const {
    // sum_i c[i] a^i b^(t-i): Horner in a with the b powers folded in
    const int t = degree();
    __int128 acc = 0, bp = 1;
    for (int i = t; i >= 0; --i) {
        acc = acc * a + static_cast<__int128>(c[i]) * bp;
        if (i > 0)
            bp *= b;
    }
    return acc;
}

uint64_t BinaryForm::eval_abs64(long long a, long long b) const {
    __int128 v = eval(a, b);
    if (v < 0)
        v = -v;
    if (static_cast<unsigned __int128>(v) >= kU63)
        throw capacity_error("BinaryForm: |F(a,b)| does not fit 63 bits");
    return static_cast<uint64_t>(v);
}

IntPolynomial BinaryForm::dehomogenize() const {
    return IntPolynomial{c};
}

BinaryForm BinaryForm::parse(const std::string& spec) {
    BinaryForm F{parse_coeff_list(spec)};
    F.validate();
    return F;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0)
        throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator*(const Rational& o) const {
    const long long g1 = std::gcd(num < 0 ? -num : num, o.den);
    const long long g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}

// ---------------------------------------------------------------------------

std::vector<uint64_t> roots_mod(const IntPolynomial& F, uint64_t m) {
    F.validate();
    if (m < 1)
        throw std::domain_error("roots_mod: modulus must be >= 1");
    if (m == 1)
        return {0};
    std::vector<uint64_t> roots{0};
    uint64_t M = 1;
    for (const auto& pe : factorize(m)) {
        uint64_t q = 1;
        for (int j = 0; j < pe.e; ++j)
            q *= pe.p;
        auto part = roots_mod_prime_power(F, pe.p, pe.e, nullptr);
        if (part.empty())
            return {};
        if (roots.size() * part.size() > 10000000)
            throw capacity_error("roots_mod: too many residues");
        std::vector<uint64_t> next;
        next.reserve(roots.size() * part.size());
        const uint64_t Minv = inv_mod(M % q, q);
        for (uint64_t r : roots)
            for (uint64_t s : part) {
                const uint64_t t = mulmod64((s + q - r % q) % q, Minv, q);
                next.push_back(r + M * t);
            }
        roots.swap(next);
        M *= q;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

uint64_t gamma_poly(const IntPolynomial& F, uint64_t d) {
    F.validate();
    if (d < 1)
        throw std::domain_error("gamma_poly: d must be >= 1");
    if (d == 1)
        return 1;
    uint64_t count = 1;
    for (const auto& pe : factorize(d)) {
        uint64_t cnt;
        if (pe.e == 1 && F.degree() == 2 && pe.p > 2 && mod_norm(F.c[2], pe.p) != 0) {
            // quadratic root count from the discriminant
            const uint64_t p = pe.p;
            const uint64_t b = mod_norm(F.c[1], p), a = mod_norm(F.c[2], p),
                           c0 = mod_norm(F.c[0], p);
            const uint64_t disc =
                (mulmod64(b, b, p) + 4 * p - 4 * mulmod64(a, c0, p) % p) % p;
            cnt = static_cast<uint64_t>(1 + legendre_symbol(disc, p));
        } else {
            cnt = roots_mod_prime_power(F, pe.p, pe.e, nullptr).size();
        }
        count *= cnt;
    }
    return count;
}

uint64_t psi_poly(const IntPolynomial& F, uint64_t x, uint64_t y) {
    F.validate();
    if (x < 1 || y < 2)
        throw std::domain_error("psi_poly: need x >= 1 and y >= 2");
    if (x > 10000000)
        throw capacity_error("psi_poly: x beyond the desk-scale budget");

    std::vector<uint64_t> vals(x + 1, 0);
    uint64_t maxv = 0;
    for (uint64_t n = 1; n <= x; ++n) {
        vals[n] = F.eval_abs64(static_cast<long long>(n));
        maxv = std::max(maxv, vals[n]);
    }
    if (maxv == 0)
        return 0;   // F vanishes on [1, x]

    const uint64_t P0 = std::min<uint64_t>(y, isqrt64(maxv) + 1);
    auto primes = shared_primes(P0);
    uint64_t budget = kScanBudget;

    for (uint32_t p32 : *primes) {
        const uint64_t p = p32;
        if (p > P0)
            break;
        std::vector<uint64_t> roots = roots_mod_prime(F, p, &budget);
        if (roots.empty())
            continue;
        if (roots.size() == p) {
            // p divides the content; strip full multiplicity everywhere
            for (uint64_t n = 1; n <= x; ++n)
                if (vals[n] != 0)
                    while (vals[n] % p == 0)
                        vals[n] /= p;
            continue;
        }
        std::vector<long long> Fd = derivative(F.c);
        uint64_t pj = p;
        while (true) {
            for (uint64_t r : roots) {
                uint64_t n = (r == 0) ? pj : r;
                for (; n <= x; n += pj)
                    if (vals[n] != 0) {
                        assert(vals[n] % p == 0);
                        vals[n] /= p;
                    }
            }
            if (pj > maxv / p)
                break;
            roots = hensel_step(F, Fd, p, pj, roots);
            if (roots.empty())
                break;
            pj *= p;
        }
    }

    uint64_t count = 0;
    for (uint64_t n = 1; n <= x; ++n)
        if (vals[n] != 0 && (vals[n] == 1 || vals[n] <= y))
            ++count;
    return count;
}

Rational gamma_star(const BinaryForm& F, uint64_t d) {
    F.validate();
    if (d < 1)
        throw std::domain_error("gamma_star: d must be >= 1");
    if (d == 1)
        return Rational(1, 1);

    auto brute = [&](uint64_t q) {
        long long cnt = 0;
        for (uint64_t a = 1; a <= q; ++a)
            for (uint64_t b = 1; b <= q; ++b) {
                if (std::gcd(std::gcd(a, b), q) != 1)
                    continue;
                // evaluate mod q
                uint64_t acc = 0;
                const int t = F.degree();
                for (int i = t; i >= 0; --i) {
                    uint64_t term = mod_norm(F.c[i], q);
                    for (int j = 0; j < t - i; ++j)
                        term = mulmod64(term, b % q, q);
                    acc = (mulmod64(acc, a % q, q) + term) % q;
                }
                if (acc == 0)
                    ++cnt;
            }
        return Rational(cnt, static_cast<long long>(q));
    };

    if (d <= 1000)
        return brute(d);
    Rational out(1, 1);
    for (const auto& pe : factorize(d)) {
        uint64_t q = 1;
        for (int j = 0; j < pe.e; ++j)
            q *= pe.p;
        if (q > 1000)
            throw capacity_error("gamma_star: prime power beyond the d^2 scan cap");
        out = out * brute(q);
    }
    return out;
}

uint64_t psi_binary(const BinaryForm& F, uint64_t x, uint64_t y, bool coprime_only) {
    F.validate();
    if (x < 1 || y < 2)
        throw std::domain_error("psi_binary: need x >= 1 and y >= 2");
    if (x > 10000)
        throw capacity_error("psi_binary: x beyond the desk-scale pair budget");

    // Coefficient bound on |F| over [1,x]^2: enough to size the sieve bound.
    long double bound = 0;
    for (long long ci : F.c)
        bound += std::abs(static_cast<long double>(ci));
    bound *= std::pow(static_cast<long double>(x), F.degree());
    if (bound >= static_cast<long double>(kU63))
        throw capacity_error("psi_binary: values may exceed 63 bits");
    const uint64_t vbound = static_cast<uint64_t>(bound);

    uint64_t count = 0;
    if (y >= vbound) {
        // every nonzero value is smooth
        for (uint64_t b = 1; b <= x; ++b)
            for (uint64_t a = 1; a <= x; ++a) {
                if (coprime_only && std::gcd(a, b) != 1)
                    continue;
                if (F.eval(static_cast<long long>(a), static_cast<long long>(b)) != 0)
                    ++count;
            }
        return count;
    }

    const uint64_t P0 = std::min<uint64_t>(y, isqrt64(vbound) + 1);
    auto primes = shared_primes(P0);
    size_t nprimes = 0;
    for (uint32_t p : *primes)
        if (p <= P0)
            ++nprimes;
    if (x * nprimes > kScanBudget)
        throw capacity_error("psi_binary: prime loop beyond the desk budget");

    const IntPolynomial f1 = F.dehomogenize();
    std::unordered_map<uint64_t, std::vector<uint64_t>> root_cache;
    uint64_t budget = kScanBudget;
    auto roots_of = [&](uint64_t p) -> const std::vector<uint64_t>& {
        auto it = root_cache.find(p);
        if (it == root_cache.end())
            it = root_cache.emplace(p, roots_mod_prime(f1, p, &budget)).first;
        return it->second;
    };

    std::vector<uint64_t> vals(x + 1);
    for (uint64_t b = 1; b <= x; ++b) {
        for (uint64_t a = 1; a <= x; ++a)
            vals[a] = F.eval_abs64(static_cast<long long>(a), static_cast<long long>(b));
        for (uint32_t p32 : *primes) {
            const uint64_t p = p32;
            if (p > P0)
                break;
            auto strip = [&](uint64_t start, uint64_t step) {
                for (uint64_t a = start; a <= x; a += step)
                    if (vals[a] != 0)
                        while (vals[a] % p == 0)
                            vals[a] /= p;
            };
            if (b % p != 0) {
                for (uint64_t r : roots_of(p)) {
                    uint64_t cls = mulmod64(b % p, r, p);
                    strip(cls == 0 ? p : cls, p);
                }
            } else if (mod_norm(F.c.back(), p) == 0) {
                strip(1, 1);   // p | b and p | c_t: the whole row is divisible
            } else {
                strip(p, p);   // p | b: only a = 0 (mod p)
            }
        }
        for (uint64_t a = 1; a <= x; ++a) {
            if (vals[a] == 0)
                continue;
            if (coprime_only && std::gcd(a, b) != 1)
                continue;
            if (vals[a] == 1 || vals[a] <= y)
                ++count;
        }
    }
    return count;
}

double remainder_poly(const IntPolynomial& F, uint64_t d, uint64_t x) {
    F.validate();
    if (d < 1)
        throw std::domain_error("remainder_poly: d must be >= 1");
    uint64_t a_d = 0;
    const auto roots = roots_mod(F, d);
    for (uint64_t r : roots) {
        // #{1 <= n <= x : n = r (mod d)}
        if (r == 0)
            a_d += x / d;
        else if (r <= x)
            a_d += (x - r) / d + 1;
    }
    const double gamma = static_cast<double>(roots.size());
    return static_cast<double>(a_d) - gamma * static_cast<double>(x) / static_cast<double>(d);
}

RemainderReport remainder_report(const IntPolynomial& F, uint64_t x, uint64_t D,
                                 double y, const ThetaProfile& profile) {
    profile.validate();
    if (D < 1 || !(y > 1.0))
        throw std::domain_error("remainder_report: need D >= 1 and y > 1");
    RemainderReport rep;
    rep.D = D;
    rep.X_norm = static_cast<double>(x);
    for (uint64_t d = 1; d <= D; ++d) {
        const double r = remainder_poly(F, d, x);
        rep.entries[d] = r;
        rep.abs_sum += std::abs(r);
    }
    rep.target = rep.X_norm / std::pow(std::log(y), profile.delta);
    return rep;
}

RemainderReport binary_remainder_report(const BinaryForm& F, uint64_t x, uint64_t D,
                                        double y, const ThetaProfile& profile) {
    profile.validate();
    F.validate();
    if (D < 1 || !(y > 1.0))
        throw std::domain_error("binary_remainder_report: need D >= 1 and y > 1");
    if (x * x > kScanBudget / std::max<uint64_t>(D, 1))
        throw capacity_error("binary_remainder_report: pair scan beyond the desk budget");

    std::vector<uint64_t> counts(D + 1, 0);
    for (uint64_t b = 1; b <= x; ++b)
        for (uint64_t a = 1; a <= x; ++a) {
            if (std::gcd(a, b) != 1)
                continue;
            const uint64_t v = F.eval_abs64(static_cast<long long>(a), static_cast<long long>(b));
            if (v == 0)
                continue;
            for (uint64_t d = 1; d <= D; ++d)
                if (v % d == 0)
                    ++counts[d];
        }
    RemainderReport rep;
    rep.D = D;
    rep.X_norm = static_cast<double>(x) * static_cast<double>(x);
    for (uint64_t d = 1; d <= D; ++d) {
        const double expected = gamma_star(F, d).to_double() * rep.X_norm / static_cast<double>(d);
        const double r = static_cast<double>(counts[d]) - expected;
        rep.entries[d] = r;
        rep.abs_sum += std::abs(r);
    }
    rep.target = rep.X_norm / std::pow(std::log(y), profile.delta);
    return rep;
}

} // namespace friable
