#include "friable/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "friable/errors.hpp"
#include "friable/primes.hpp"
#include "friable/sieve.hpp"

namespace friable {

// ---------------------------------------------------------------------------
// FiniteSet
// ---------------------------------------------------------------------------

FiniteSet FiniteSet::from_elements(std::vector<uint64_t> elements) {
    if (elements.empty())
        throw std::domain_error("FiniteSet: set must be nonempty");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.front() < 1)
        throw std::domain_error("FiniteSet: elements must be positive");
    FiniteSet A;
    A.elems_ = std::move(elements);
    A.build_factors();
    return A;
}

FiniteSet FiniteSet::range(uint64_t n) {
    std::vector<uint64_t> v(n);
    std::iota(v.begin(), v.end(), uint64_t(1));
    return from_elements(std::move(v));
}

FiniteSet FiniteSet::poly_values(const IntPolynomial& F, uint64_t n) {
    F.validate();
    std::vector<uint64_t> v;
    v.reserve(n);
    for (uint64_t k = 1; k <= n; ++k) {
        const uint64_t val = F.eval_abs64(static_cast<long long>(k));
        if (val != 0)
            v.push_back(val);
    }
    return from_elements(std::move(v));
}

void FiniteSet::build_factors() {
    const uint64_t maxe = elems_.back();
    const uint64_t root = isqrt64(maxe);
    if (root > (uint64_t(1) << 21))
        throw capacity_error("FiniteSet: elements too large to factor at desk scale");
    auto primes = shared_primes(root);
    lpf_.resize(elems_.size());
    fact_.resize(elems_.size());
    for (size_t i = 0; i < elems_.size(); ++i) {
        uint64_t m = elems_[i];
        uint64_t big = 1;
        auto& fs = fact_[i];
        for (uint32_t p : *primes) {
            if (uint64_t(p) * p > m)
                break;
            if (m % p == 0) {
                int e = 0;
                while (m % p == 0) {
                    m /= p;
                    ++e;
                }
                fs.push_back({p, e});
            }
        }
        if (m > 1) {
            fs.push_back({m, 1});
            big = m;
        }
        lpf_[i] = fs.empty() ? 1 : std::max(big, fs.back().p);
    }
}

uint64_t FiniteSet::psi_y(uint64_t y) const {
    uint64_t c = 0;
    for (size_t i = 0; i < elems_.size(); ++i)
        if (lpf_[i] <= y)
            ++c;
    return c;
}

uint64_t FiniteSet::psi_yd(uint64_t y, uint64_t d) const {
    uint64_t c = 0;
    for (size_t i = 0; i < elems_.size(); ++i)
        if (lpf_[i] <= y && elems_[i] % d == 0)
            ++c;
    return c;
}

uint64_t FiniteSet::count_divisible(uint64_t d) const {
    uint64_t c = 0;
    for (uint64_t m : elems_)
        if (m % d == 0)
            ++c;
    return c;
}

// ---------------------------------------------------------------------------

double q_factor(double x, std::span<const uint64_t> primes) {
    double num = 1.0, den = 1.0, prod = 1.0;
    for (uint64_t p : primes) {
        prod *= static_cast<double>(p);
        if (!(x > prod))
            throw std::domain_error("q_factor: x must exceed the running product");
        num *= std::log(static_cast<double>(p));
        den *= std::log(x / prod);
    }
    return num / den;
}

HildebrandResult hildebrand_check(const FiniteSet& A, uint64_t y) {
    if (y < 2)
        throw std::domain_error("hildebrand_check: need y >= 2");
    const uint64_t x = A.x_sup();
    const double logx = std::log(static_cast<double>(x));

    HildebrandResult res;
    res.lhs = static_cast<double>(A.psi_y(y)) * logx;

    // Step-function value of the integral: each smooth element m contributes
    // log(x/m) over [m, x].
    double integral = 0.0;
    for (size_t i = 0; i < A.size(); ++i)
        if (A.lpf(i) <= y)
            integral += logx - std::log(static_cast<double>(A.elements()[i]));

    // sum over prime powers d = p^j <= x with p <= y of Lambda(d) Psi_A(y, d)
    double lambda_sum = 0.0;
    auto primes = shared_primes(y);
    for (uint32_t p : *primes) {
        if (uint64_t(p) > y)
            break;
        const double logp = std::log(static_cast<double>(p));
        for (uint64_t d = p; d <= x; ) {
            lambda_sum += logp * static_cast<double>(A.psi_yd(y, d));
            if (d > x / p)
                break;
            d *= p;
        }
    }
    res.rhs = integral + lambda_sum;

    double cor = 0.0;
    for (uint32_t p : *primes) {
        if (uint64_t(p) > y)
            break;
        cor += std::log(static_cast<double>(p)) * static_cast<double>(A.psi_yd(y, p));
    }
    res.corollary_rhs = cor;

    if (std::abs(res.lhs - res.rhs) > 1e-9 * res.lhs)
        throw std::logic_error("hildebrand_check: identity violated beyond rounding");
    if (res.lhs < res.corollary_rhs - 1e-9 * std::abs(res.lhs))
        throw std::logic_error("hildebrand_check: corollary inequality violated");
    return res;
}

namespace {

bool is_smooth_value(uint64_t n, uint64_t y) {
    for (const auto& pe : factorize(n))
        if (pe.p > y)
            return false;
    return true;
}

} // namespace

double t_fn(const FiniteSet& A, uint64_t y, uint64_t n) {
    if (n < 1 || !is_smooth_value(n, y))
        throw std::domain_error("t_fn: n must be a y-smooth positive integer");
    const uint64_t x = A.x_sup();
    double sum = 0.0;
    for (size_t i = 0; i < A.size(); ++i) {
        if (A.lpf(i) > y)
            continue;
        const uint64_t m = A.elements()[i];
        if (m % n != 0)
            continue;
        const uint64_t k = m / n;
        for (const auto& pe : A.factors(i)) {
            if (k % pe.p != 0)
                continue;
            if (n <= x / pe.p)   // n * p <= x without overflow
                sum += std::log(static_cast<double>(pe.p));
        }
    }
    return sum;
}

double r_fn(const FiniteSet& A, uint64_t y, uint64_t n) {
    if (n < 1 || !is_smooth_value(n, y))
        throw std::domain_error("r_fn: n must be a y-smooth positive integer");
    const uint64_t x = A.x_sup();
    double sum = 0.0;
    for (size_t i = 0; i < A.size(); ++i) {
        const uint64_t m = A.elements()[i];
        if (m % n != 0)
            continue;
        const uint64_t k = m / n;
        for (const auto& pe : A.factors(i)) {
            const uint64_t p = pe.p;
            if (p > y || k % p != 0)
                continue;
            const uint64_t np = n * p;
            if (np <= x && static_cast<__uint128_t>(np) * y > x)
                sum += std::log(static_cast<double>(p));
        }
    }
    return sum;
}

BoundCheck check_recursion(const FiniteSet& A, uint64_t y, int k) {
    if (k < 1 || k > 3)
        throw std::domain_error("check_recursion: k must lie in {1,2,3}");
    auto primes = shared_primes(y);
    size_t npr = 0;
    for (uint32_t p : *primes)
        if (uint64_t(p) <= y)
            ++npr;
    double budget = 1.0;
    for (int i = 0; i < k; ++i)
        budget *= static_cast<double>(npr);
    if (budget > 1e9)
        throw capacity_error("check_recursion: pi(y)^k beyond the summand budget");

    const uint64_t x = A.x_sup();
    const double xd = static_cast<double>(x);
    const double lhs = t_fn(A, y, 1);
    double rhs = r_fn(A, y, 1);

    // ordered tuples (p_1..p_i), each prime <= y, product <= x/y
    std::vector<uint64_t> tuple;
    std::function<void(int)> walk = [&](int depth) {
        if (depth > 0) {
            const uint64_t prod = std::accumulate(tuple.begin(), tuple.end(), uint64_t(1),
                                                  std::multiplies<uint64_t>());
            rhs += q_factor(xd, tuple) * r_fn(A, y, prod);
        }
        if (depth == k)
            return;
        uint64_t prod = std::accumulate(tuple.begin(), tuple.end(), uint64_t(1),
                                        std::multiplies<uint64_t>());
        for (uint32_t p : *primes) {
            if (uint64_t(p) > y)
                break;
            if (static_cast<__uint128_t>(prod) * p * y > x)
                break;   // primes ascend, so every later tuple is out of range too
            tuple.push_back(p);
            walk(depth + 1);
            tuple.pop_back();
        }
    };
    walk(0);

    BoundCheck out;
    out.empirical_density = lhs;
    out.coefficient = rhs;
    out.margin = lhs - rhs;
    out.passed = out.margin >= -1e-9 * std::abs(lhs);
    return out;
}

// ---------------------------------------------------------------------------
// Convex regions and the multidimensional Mertens comparison
// ---------------------------------------------------------------------------

ConvexRegion ConvexRegion::box(std::vector<std::array<double, 2>> b) {
    ConvexRegion r;
    r.dim = static_cast<int>(b.size());
    r.bbox = b;
    r.contains = [b](std::span<const double> t) {
        for (size_t i = 0; i < b.size(); ++i)
            if (t[i] < b[i][0] || t[i] > b[i][1])
                return false;
        return true;
    };
    return r;
}

ConvexRegion ConvexRegion::simplex(int dim, double cap) {
    ConvexRegion r;
    r.dim = dim;
    r.bbox.assign(dim, {0.0, std::min(1.0, cap)});
    r.contains = [cap](std::span<const double> t) {
        double s = 0.0;
        for (double ti : t) {
            if (ti < 0.0 || ti > 1.0)
                return false;
            s += ti;
        }
        return s <= cap;
    };
    return r;
}

ConvexRegion ConvexRegion::empty(int dim) {
    ConvexRegion r;
    r.dim = dim;
    r.bbox.assign(dim, {0.0, 0.0});
    r.contains = [](std::span<const double>) { return false; };
    return r;
}

namespace {

// Interval {t : (prefix, t) in U} of the last coordinate; convexity makes it
// an interval.  Probed on a 128-point lattice, then bisected to ~1e-13.
std::optional<std::array<double, 2>> slice_last(const ConvexRegion& U,
                                                std::span<const double> prefix) {
    const auto [lo, hi] = U.bbox[U.dim - 1];
    std::vector<double> pt(prefix.begin(), prefix.end());
    pt.push_back(0.0);
    auto inside = [&](double t) {
        pt.back() = t;
        return U.contains(pt);
    };
    const int N = 128;
    int first = -1;
    for (int i = 0; i <= N; ++i) {
        const double t = lo + (hi - lo) * i / N;
        if (inside(t)) {
            first = i;
            break;
        }
    }
    if (first < 0)
        return std::nullopt;
    const double t_in = lo + (hi - lo) * first / N;
    double a = lo, b = hi;
    if (first > 0) {
        double out = lo + (hi - lo) * (first - 1) / N, in = t_in;
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (out + in);
            (inside(m) ? in : out) = m;
        }
        a = in;
    }
    if (!inside(hi)) {
        double in = t_in, out = hi;
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (in + out);
            (inside(m) ? in : out) = m;
        }
        b = in;
    }
    return std::array<double, 2>{a, b};
}

struct KahanSum {
    double acc = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
};

} // namespace

MertensResult mertens_multidim(const GammaFn& gamma,
                               const std::function<double(std::span<const double>)>& f,
                               const ConvexRegion& U, uint64_t y, int k, double kappa,
                               const QuadratureConfig& cfg) {
    cfg.validate();
    if (k < 1)
        throw std::domain_error("mertens_multidim: k must be >= 1");
    if (k > 3)
        throw capacity_error("mertens_multidim: k > 3 beyond the tuple budget");
    if (U.dim != k || static_cast<int>(U.bbox.size()) != k)
        throw std::domain_error("mertens_multidim: region dimension mismatch");
    if (y < 2)
        throw std::domain_error("mertens_multidim: need y >= 2");

    auto primes = shared_primes(y);
    const double logy = std::log(static_cast<double>(y));

    // index range of primes with log p / log y inside [a, b]
    auto prime_range = [&](double a, double b) {
        const double plo = std::exp(std::max(a, 0.0) * logy);
        const double phi = std::exp(std::min(b, 1.0) * logy);
        auto lo_it = std::lower_bound(primes->begin(), primes->end(), plo - 0.5);
        auto hi_it = std::upper_bound(primes->begin(), primes->end(), phi + 0.5);
        return std::pair(lo_it, hi_it);
    };

    KahanSum total;
    std::vector<double> coords(k);
    std::function<void(int, double)> sum_walk = [&](int dim, double weight) {
        if (dim == k - 1) {
            const auto iv = slice_last(U, std::span(coords.data(), k - 1));
            if (!iv)
                return;
            auto [lo_it, hi_it] = prime_range((*iv)[0] - 1e-12, (*iv)[1] + 1e-12);
            for (auto it = lo_it; it != hi_it; ++it) {
                const uint64_t p = *it;
                if (p > y)
                    break;
                coords[dim] = std::log(static_cast<double>(p)) / logy;
                if (!U.contains(coords))
                    continue;
                const double w = weight * gamma(p) * std::log(static_cast<double>(p)) /
                                 (static_cast<double>(p) * logy);
                total.add(w * f(coords));
            }
            return;
        }
        auto [lo_it, hi_it] = prime_range(U.bbox[dim][0] - 1e-12, U.bbox[dim][1] + 1e-12);
        for (auto it = lo_it; it != hi_it; ++it) {
            const uint64_t p = *it;
            if (p > y)
                break;
            coords[dim] = std::log(static_cast<double>(p)) / logy;
            const double w = weight * gamma(p) * std::log(static_cast<double>(p)) /
                             (static_cast<double>(p) * logy);
            sum_walk(dim + 1, w);
        }
    };
    sum_walk(0, 1.0);

    // kappa^k int_U f by slice-resolved nested quadrature
    std::vector<double> icoords(k);
    std::function<double(int)> integ = [&](int dim) -> double {
        if (dim == k - 1) {
            const auto iv = slice_last(U, std::span(icoords.data(), k - 1));
            if (!iv || (*iv)[1] <= (*iv)[0])
                return 0.0;
            return adaptive_simpson(
                [&](double t) {
                    icoords[dim] = t;
                    return f(icoords);
                },
                (*iv)[0], (*iv)[1], cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
        }
        return adaptive_simpson(
            [&](double t) {
                icoords[dim] = t;
                return integ(dim + 1);
            },
            U.bbox[dim][0], U.bbox[dim][1], cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
    };
    double integral = integ(0);
    for (int i = 0; i < k; ++i)
        integral *= kappa;

    MertensResult res;
    res.sum = total.acc;
    res.integral = integral;
    res.error = std::abs(res.sum - res.integral);
    return res;
}

// ---------------------------------------------------------------------------

ConditionReport check_condition_A(const GammaFn& gamma, double kappa,
                                  std::span<const uint64_t> z_grid) {
    for (uint64_t z : z_grid)
        if (z < 2)
            throw std::domain_error("check_condition_A: grid values must be >= 2");
    ConditionReport rep;
    rep.kappa_used = kappa;
    rep.grid.assign(z_grid.begin(), z_grid.end());
    std::vector<uint64_t> order(z_grid.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](uint64_t a, uint64_t b) { return z_grid[a] < z_grid[b]; });

    const uint64_t zmax = *std::max_element(z_grid.begin(), z_grid.end());
    auto primes = shared_primes(zmax);
    rep.deviations.assign(z_grid.size(), 0.0);
    KahanSum acc;
    size_t pi = 0;
    for (uint64_t oi : order) {
        const uint64_t z = z_grid[oi];
        while (pi < primes->size() && (*primes)[pi] <= z) {
            const double p = static_cast<double>((*primes)[pi]);
            acc.add(gamma((*primes)[pi]) * std::log(p) / p);
            ++pi;
        }
        rep.deviations[oi] = acc.acc - kappa * std::log(static_cast<double>(z));
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, std::abs(rep.deviations[oi]));
    }
    return rep;
}

double condition_A_sup(const GammaFn& gamma, double kappa, uint64_t zmin, uint64_t zmax) {
    if (zmin < 2 || zmin > zmax)
        throw std::domain_error("condition_A_sup: need 2 <= zmin <= zmax");
    auto primes = shared_primes(zmax);
    KahanSum acc;
    double sup = 0.0;
    auto consider = [&](double sum_value, uint64_t z) {
        sup = std::max(sup, std::abs(sum_value - kappa * std::log(static_cast<double>(z))));
    };
    size_t i = 0;
    for (; i < primes->size() && (*primes)[i] <= zmin; ++i) {
        const double p = static_cast<double>((*primes)[i]);
        acc.add(gamma((*primes)[i]) * std::log(p) / p);
    }
    consider(acc.acc, zmin);
    for (; i < primes->size() && (*primes)[i] <= zmax; ++i) {
        const uint64_t p = (*primes)[i];
        consider(acc.acc, p);   // z just below p
        acc.add(gamma(p) * std::log(static_cast<double>(p)) / static_cast<double>(p));
        consider(acc.acc, p);   // z = p
    }
    consider(acc.acc, zmax);
    return sup;
}

// ---------------------------------------------------------------------------

BoundCheck lower_bound_report(const LowerBoundQuery& q, const QuadratureConfig& cfg) {
    cfg.validate();
    q.profile.validate();
    BoundCheck out;
    switch (q.application) {
    case Application::plain: {
        if (q.x < 1 || q.y < 2)
            throw std::domain_error("lower_bound_report: need x >= 1, y >= 2");
        const double u = std::log(static_cast<double>(q.x)) / std::log(static_cast<double>(q.y));
        out.empirical_density =
            static_cast<double>(psi(q.x, q.y)) / static_cast<double>(q.x);
        out.coefficient = rho_theta(std::max(u, 1e-12), q.profile, cfg);
        break;
    }
    case Application::poly: {
        if (!q.poly)
            throw std::domain_error("lower_bound_report: poly application needs a polynomial");
        uint64_t sup = 0;
        for (uint64_t n = 1; n <= q.x; ++n)
            sup = std::max(sup, q.poly->eval_abs64(static_cast<long long>(n)));
        if (sup < 2)
            throw std::domain_error("lower_bound_report: polynomial values degenerate");
        const double u_prime =
            std::log(static_cast<double>(sup)) / std::log(static_cast<double>(q.y));
        out.empirical_density = static_cast<double>(psi_poly(*q.poly, q.x, q.y)) /
                                static_cast<double>(q.x);
        out.coefficient = rho_theta(u_prime, q.profile, cfg);
        break;
    }
    case Application::binary: {
        if (!q.form)
            throw std::domain_error("lower_bound_report: binary application needs a form");
        uint64_t sup = 0;
        for (uint64_t a = 1; a <= q.x; ++a)
            for (uint64_t b = 1; b <= q.x; ++b)
                if (std::gcd(a, b) == 1)
                    sup = std::max(sup, q.form->eval_abs64(static_cast<long long>(a),
                                                           static_cast<long long>(b)));
        if (sup < 2)
            throw std::domain_error("lower_bound_report: form values degenerate");
        const double u_prime =
            std::log(static_cast<double>(sup)) / std::log(static_cast<double>(q.y));
        // the theorem sieves the coprime-pair set
        out.empirical_density = static_cast<double>(psi_binary(*q.form, q.x, q.y, true)) /
                                (static_cast<double>(q.x) * static_cast<double>(q.x));
        out.coefficient = rho_theta(u_prime, q.profile, cfg);
        break;
    }
    case Application::pairs: {
        ShiftedConfig sc{q.a, q.u, q.v, q.profile};
        sc.validate();
        const uint64_t y2 = smoothness_threshold(q.x, q.v);
        const double denom = static_cast<double>(psi(q.x, y2));
        if (denom == 0.0)
            throw std::domain_error("lower_bound_report: Psi(x, x^{1/v}) vanished");
        out.empirical_density = static_cast<double>(psi_pairs(q.x, sc)) / denom;
        if (std::abs(q.profile.theta - 0.5) < 1e-12)
            out.coefficient = theorem_f(q.u, Regime::harper_half);
        else if (std::abs(q.profile.theta - 0.625) < 1e-12)
            out.coefficient = theorem_f(q.u, Regime::pascadi_58);
        else
            out.coefficient = rho_theta(q.u, q.profile, cfg);
        break;
    }
    }
    out.margin = out.empirical_density - out.coefficient;
    out.passed = out.margin >= -q.tolerance;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "\"\"";
        else
            out += c;
    }
    out += "\"";
    return out;
}

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

void write_check_csv(std::ostream& os, std::span<const CheckRow> rows) {
    os << "check_name,parameter_json,lhs,rhs,margin,passed\n";
    for (const auto& r : rows) {
        os << r.check_name << ',' << csv_quote(r.parameter_json) << ',' << fmt_real(r.lhs)
           << ',' << fmt_real(r.rhs) << ',' << fmt_real(r.margin) << ','
           << (r.passed ? "true" : "false") << '\n';
    }
}

} // namespace friable
