#include "friable/dickman.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "friable/errors.hpp"

namespace friable {

namespace {

constexpr double kKappaOneEps = 1e-8;   // switch to the kappa->1 limit formula
constexpr double kRhoMaxU     = 64.0;   // desk range for dickman_rho

double hermite_eval(double a, double b, double va, double vb, double da, double db, double u) {
    const double w = b - a;
    const double t = (u - a) / w;
    const double t2 = t * t, t3 = t2 * t;
    return va * (2 * t3 - 3 * t2 + 1) + w * da * (t3 - 2 * t2 + t) +
           vb * (-2 * t3 + 3 * t2) + w * db * (t3 - t2);
}

double hermite_integral(double w, double va, double vb, double da, double db) {
    return 0.5 * w * (va + vb) + w * w / 12.0 * (da - db);
}

// ---------------------------------------------------------------------------
// Dickman rho on a uniform grid.  Closed forms on [0,2]; for u > 2 the
// integral form u rho(u) = int_{u-1}^u rho is stepped with per-cell Hermite
// quadrature (node derivatives come from the delay equation itself, so each
// step is a linear solve and the scheme is O(h^4)).
// ---------------------------------------------------------------------------
class RhoTable {
public:
    RhoTable(int steps_per_unit, int umax_units)
        : spu_(steps_per_unit), h_(1.0 / steps_per_unit), units_(umax_units) {
        const size_t n = size_t(units_) * spu_;
        val_.resize(n + 1);
        der_.resize(n + 1);
        pre_.resize(n + 1);
        for (size_t i = 0; i <= n; ++i) {
            const double u = i * h_;
            if (i <= size_t(spu_)) {
                val_[i] = 1.0;
                der_[i] = 0.0;
                pre_[i] = u;
            } else if (i <= size_t(2 * spu_)) {
                val_[i] = 1.0 - std::log(u);
                der_[i] = -1.0 / u;
                pre_[i] = 2.0 * u - u * std::log(u) - 1.0;
            } else {
                const double w = val_[i - spu_];   // rho(u - 1)
                const double d = -w / u;
                const double rhs = pre_[i - 1] - pre_[i - spu_] + 0.5 * h_ * val_[i - 1] +
                                   h_ * h_ / 12.0 * (der_[i - 1] - d);
                val_[i] = rhs / (u - 0.5 * h_);
                der_[i] = d;
                pre_[i] = pre_[i - 1] + hermite_integral(h_, val_[i - 1], val_[i], der_[i - 1], d);
            }
        }
    }

    int units() const { return units_; }
    int steps_per_unit() const { return spu_; }

    double eval(double u) const {
        if (u <= 1.0)
            return 1.0;
        if (u <= 2.0)
            return 1.0 - std::log(u);
        size_t i = std::min(static_cast<size_t>(u / h_), val_.size() - 2);
        const double a = i * h_;
        return hermite_eval(a, a + h_, val_[i], val_[i + 1], der_[i], der_[i + 1], u);
    }

private:
    int spu_;
    double h_;
    int units_;
    std::vector<double> val_, der_, pre_;
};

std::mutex g_rho_mutex;
std::map<int, std::shared_ptr<const RhoTable>> g_rho_tables;

std::shared_ptr<const RhoTable> rho_table(int spu, int units) {
    std::lock_guard<std::mutex> lock(g_rho_mutex);
    auto& slot = g_rho_tables[spu];
    if (!slot || slot->units() < units)
        slot = std::make_shared<const RhoTable>(spu, std::max(units, slot ? slot->units() : 0));
    return slot;
}

int steps_per_unit(const QuadratureConfig& cfg) {
    int spu = static_cast<int>(std::lround(1.0 / cfg.dde_grid_step));
    return std::max(spu, 64);
}

// ---------------------------------------------------------------------------
// Shared node scaffold for the mu tables.  Breakpoints of the mu_1 branches
// ({j, j+v}) are segment borders; each segment is split uniformly so that
// every node u >= 1 has its delayed argument u-1 land exactly on a node.
// ---------------------------------------------------------------------------
struct NodeGrid {
    std::vector<double> x;
    std::vector<ptrdiff_t> delay;   // index of the node at x[i] - 1, or -1
    ptrdiff_t idx_one = -1;

    NodeGrid(double v, int units, double h) {
        std::vector<double> borders;
        for (int j = 0; j <= units; ++j) {
            borders.push_back(j);
            if (v > 1e-12 && v < 1.0 - 1e-12 && j + v < units)
                borders.push_back(j + v);
        }
        std::sort(borders.begin(), borders.end());
        for (size_t s = 0; s + 1 < borders.size(); ++s) {
            const double a = borders[s], b = borders[s + 1];
            const int m = std::max(1, static_cast<int>(std::lround((b - a) / h)));
            for (int g = 0; g < m; ++g)
                x.push_back(a + (b - a) * g / m);
        }
        x.push_back(borders.back());
        delay.assign(x.size(), -1);
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] < 1.0 - 1e-12)
                continue;
            const double target = x[i] - 1.0;
            auto it = std::lower_bound(x.begin(), x.end(), target);
            size_t best = std::min<size_t>(it - x.begin(), x.size() - 1);
            if (best > 0 && std::abs(x[best - 1] - target) < std::abs(x[best] - target))
                --best;
            if (std::abs(x[best] - target) <= 1e-9)
                delay[i] = static_cast<ptrdiff_t>(best);
        }
        auto one = std::lower_bound(x.begin(), x.end(), 1.0 - 1e-12);
        idx_one = one - x.begin();
    }

    size_t cell_of(double u) const {
        auto it = std::upper_bound(x.begin(), x.end(), u);
        size_t i = (it == x.begin()) ? 0 : (it - x.begin() - 1);
        return std::min(i, x.size() - 2);
    }
};

// Piecewise closed form of mu_1 and its antiderivative.
double mu1_value(double u, double v) {
    if (u <= 0.0)
        return 0.0;
    if (u <= 1.0)
        return std::max(0.0, u - v) / u;
    if (u <= 2.0)
        return std::max(0.0, std::min(1.0 - v, 2.0 - u)) / u;
    return 0.0;
}

double mu1_deriv(double u, double v, double side_hint) {
    const double s = side_hint;   // a point inside the cell picking the branch
    if (s <= v || s > 2.0)
        return 0.0;
    if (s <= 1.0)
        return v / (u * u);
    if (s <= 1.0 + v)
        return -(1.0 - v) / (u * u);
    return -2.0 / (u * u);
}

double mu1_antideriv(double u, double v, double side_hint) {
    const double s = side_hint;
    if (s <= v)
        return 0.0;
    if (s <= 1.0)
        return (v > 0.0) ? u - v * std::log(u) : u;
    if (s <= 1.0 + v)
        return (1.0 - v) * std::log(u);
    if (s <= 2.0)
        return 2.0 * std::log(u) - u;
    return 0.0;
}

// ---------------------------------------------------------------------------
// Level tables for mu_k(., v), k >= 2, built bottom-up from the recursion.
// ---------------------------------------------------------------------------
class MuLevels {
public:
    MuLevels(double v, int spu, int units)
        : v_(v), grid_(v, units, 1.0 / spu), units_(units) {
        build_level1();
    }

    int units() const { return units_; }

    double value(int k, double u) {
        assert(k >= 1);
        if (k == 1)
            return mu1_value(u, v_);
        if (u <= 1.0)
            return 0.0;
        std::lock_guard<std::mutex> lock(mutex_);
        while (static_cast<int>(lv_.size()) < k)
            build_next();
        const Level& L = lv_[k - 1];
        const size_t i = grid_.cell_of(u);
        return hermite_eval(grid_.x[i], grid_.x[i + 1], L.val[i], L.val[i + 1],
                            L.derR[i], L.derL[i + 1], u);
    }

private:
    struct Level {
        std::vector<double> val, derL, derR, pre;
    };

    void build_level1() {
        const auto& x = grid_.x;
        Level L;
        const size_t n = x.size();
        L.val.resize(n);
        L.derL.resize(n);
        L.derR.resize(n);
        L.pre.resize(n);
        for (size_t i = 0; i < n; ++i)
            L.val[i] = mu1_value(x[i], v_);
        L.derL[0] = L.derR[n - 1] = 0.0;
        L.pre[0] = 0.0;
        for (size_t i = 0; i + 1 < n; ++i) {
            const double mid = 0.5 * (x[i] + x[i + 1]);
            L.derR[i] = mu1_deriv(x[i], v_, mid);
            L.derL[i + 1] = mu1_deriv(x[i + 1], v_, mid);
            L.pre[i + 1] = L.pre[i] + (mu1_antideriv(x[i + 1], v_, mid) - mu1_antideriv(x[i], v_, mid));
        }
        lv_.push_back(std::move(L));
    }

    void build_next() {
        const auto& x = grid_.x;
        const Level& P = lv_.back();
        Level L;
        const size_t n = x.size();
        L.val.assign(n, 0.0);
        L.derL.assign(n, 0.0);
        L.derR.assign(n, 0.0);
        L.pre.assign(n, 0.0);
        for (size_t i = 0; i < n; ++i) {
            const double u = x[i];
            if (u <= 1.0)
                continue;
            const ptrdiff_t lo = (u <= 2.0) ? grid_.idx_one : grid_.delay[i];
            assert(lo >= 0);
            L.val[i] = (P.pre[i] - P.pre[lo]) / u;
        }
        for (size_t i = 0; i + 1 < n; ++i) {
            const double mid = 0.5 * (x[i] + x[i + 1]);
            if (mid <= 1.0) {
                L.pre[i + 1] = L.pre[i];
                continue;   // identically zero below 1
            }
            // d/du of u mu_k is mu_{k-1}(u) minus, past u = 2, mu_{k-1}(u-1);
            // the branch is a per-cell choice so one-sided kinks stay exact.
            const bool delayed = mid > 2.0;
            auto deriv_at = [&](size_t j) {
                double d = P.val[j] - L.val[j];
                if (delayed)
                    d -= P.val[static_cast<size_t>(grid_.delay[j])];
                return d / std::max(x[j], 1.0);
            };
            L.derR[i] = deriv_at(i);
            L.derL[i + 1] = deriv_at(i + 1);
            L.pre[i + 1] = L.pre[i] + hermite_integral(x[i + 1] - x[i], L.val[i], L.val[i + 1],
                                                       L.derR[i], L.derL[i + 1]);
        }
        lv_.push_back(std::move(L));
    }

    double v_;
    NodeGrid grid_;
    int units_;
    std::vector<Level> lv_;
    std::mutex mutex_;
};

struct MuKey {
    int64_t v_bits;
    int spu;
    bool operator<(const MuKey& o) const {
        return std::tie(v_bits, spu) < std::tie(o.v_bits, o.spu);
    }
};

int64_t double_bits(double v) {
    int64_t b;
    std::memcpy(&b, &v, sizeof b);
    return b;
}

std::mutex g_mu_mutex;
std::map<MuKey, std::shared_ptr<MuLevels>> g_mu_tables;

std::shared_ptr<MuLevels> mu_levels(double v, int spu, int units) {
    std::lock_guard<std::mutex> lock(g_mu_mutex);
    if (g_mu_tables.size() > 128)
        g_mu_tables.clear();
    auto& slot = g_mu_tables[{double_bits(v), spu}];
    if (!slot || slot->units() < units)
        slot = std::make_shared<MuLevels>(v, spu, std::max(units, slot ? slot->units() : 0));
    return slot;
}

// ---------------------------------------------------------------------------
// Closed forms of mu^(kappa) on (0,2] and the dense-grid DDE beyond.
// ---------------------------------------------------------------------------
double mu_closed_upto2(double u, double v, double kappa) {
    if (u <= v)
        return 0.0;
    if (u <= 1.0)
        return kappa * (1.0 - v / u);
    if (u <= 1.0 + v)
        return kappa * (1.0 - v) * std::pow(u, kappa - 1.0);
    if (std::abs(kappa - 1.0) < kKappaOneEps)
        return 1.0 - v + std::log((1.0 + v) / u);
    // Solution of u mu' = (kappa-1) mu - kappa continuous at u = 1+v with the
    // previous branch (the constant as printed in the source material is
    // inconsistent with the series for kappa != 1).
    const double c = kappa * (1.0 - v) - kappa / (kappa - 1.0) * std::pow(1.0 + v, 1.0 - kappa);
    return c * std::pow(u, kappa - 1.0) + kappa / (kappa - 1.0);
}

double mu_closed_deriv_upto2(double u, double v, double kappa, double side_hint) {
    const double s = side_hint;
    if (s <= v)
        return 0.0;
    if (s <= 1.0)
        return kappa * v / (u * u);
    if (s <= 1.0 + v)
        return kappa * (kappa - 1.0) * (1.0 - v) * std::pow(u, kappa - 2.0);
    if (std::abs(kappa - 1.0) < kKappaOneEps)
        return -1.0 / u;
    const double c = kappa * (1.0 - v) - kappa / (kappa - 1.0) * std::pow(1.0 + v, 1.0 - kappa);
    return c * (kappa - 1.0) * std::pow(u, kappa - 2.0);
}

class MuClosedTable {
public:
    MuClosedTable(double v, double kappa, int spu, int units)
        : v_(v), kappa_(kappa), grid_(v, units, 1.0 / spu), units_(units) {
        const auto& x = grid_.x;
        const size_t n = x.size();
        val_.assign(n, 0.0);
        derL_.assign(n, 0.0);
        derR_.assign(n, 0.0);
        pre_.assign(n, 0.0);
        size_t first_step = n;
        for (size_t i = 0; i < n; ++i) {
            if (x[i] > 2.0 + 1e-12) {
                first_step = i;
                break;
            }
            val_[i] = mu_closed_upto2(x[i], v, kappa);
        }
        for (size_t i = 0; i + 1 < n && i + 1 < first_step + 1; ++i) {
            const double mid = 0.5 * (x[i] + x[i + 1]);
            if (mid > 2.0)
                break;
            derR_[i] = mu_closed_deriv_upto2(x[i], v, kappa, mid);
            derL_[i + 1] = mu_closed_deriv_upto2(x[i + 1], v, kappa, mid);
            pre_[i + 1] = pre_[i] + hermite_integral(x[i + 1] - x[i], val_[i], val_[i + 1],
                                                     derR_[i], derL_[i + 1]);
        }
        if (first_step == n)
            return;
        // One-sided derivative switches to the DDE at u = 2.
        const size_t i2 = first_step - 1;
        assert(std::abs(x[i2] - 2.0) < 1e-9);
        const double mu2 = val_[i2];
        const double mu1v = mu_closed_upto2(1.0, v, kappa);
        derR_[i2] = ((kappa - 1.0) * mu2 - kappa * mu1v) / 2.0;
        const double pre2 = pre_[i2];
        const ptrdiff_t ione = grid_.idx_one;
        const double pre1 = pre_[ione];
        for (size_t i = first_step; i < n; ++i) {
            const double u = x[i];
            const double w = x[i] - x[i - 1];
            const ptrdiff_t di = grid_.delay[i];
            assert(di >= 0);
            const double muw = val_[di];   // mu(u-1, v)
            const double rhs = 2.0 * mu2 + kappa * (pre_[i - 1] - pre2) -
                               kappa * (pre_[di] - pre1) +
                               kappa * (0.5 * w * val_[i - 1] + w * w / 12.0 * derR_[i - 1] +
                                        w * w / 12.0 * kappa * muw / u);
            const double denom = u - 0.5 * kappa * w + kappa * w * w * (kappa - 1.0) / (12.0 * u);
            val_[i] = rhs / denom;
            const double d = ((kappa - 1.0) * val_[i] - kappa * muw) / u;
            derL_[i] = d;
            derR_[i] = d;
            pre_[i] = pre_[i - 1] + hermite_integral(w, val_[i - 1], val_[i], derR_[i - 1], d);
        }
    }

    int units() const { return units_; }

    double eval(double u) const {
        const size_t i = grid_.cell_of(u);
        return hermite_eval(grid_.x[i], grid_.x[i + 1], val_[i], val_[i + 1],
                            derR_[i], derL_[i + 1], u);
    }

private:
    double v_, kappa_;
    NodeGrid grid_;
    int units_;
    std::vector<double> val_, derL_, derR_, pre_;
};

struct MuClosedKey {
    int64_t v_bits, kappa_bits;
    int spu;
    bool operator<(const MuClosedKey& o) const {
        return std::tie(v_bits, kappa_bits, spu) < std::tie(o.v_bits, o.kappa_bits, o.spu);
    }
};

std::mutex g_muc_mutex;
std::map<MuClosedKey, std::shared_ptr<const MuClosedTable>> g_muc_tables;

std::shared_ptr<const MuClosedTable> mu_closed_table(double v, double kappa, int spu, int units) {
    std::lock_guard<std::mutex> lock(g_muc_mutex);
    if (g_muc_tables.size() > 128)
        g_muc_tables.clear();
    auto& slot = g_muc_tables[{double_bits(v), double_bits(kappa), spu}];
    if (!slot || slot->units() < units)
        slot = std::make_shared<const MuClosedTable>(v, kappa, spu,
                                                     std::max(units, slot ? slot->units() : 0));
    return slot;
}

void check_uv_domain(double u, double v) {
    if (!std::isfinite(u) || u <= 0.0)
        throw std::domain_error("mu: u must be a positive finite real");
    if (!std::isfinite(v) || v < 0.0 || v > std::min(1.0, u))
        throw std::domain_error("mu: need 0 <= v <= min(1, u)");
}

// v == min(1,u) boundary: 0 is forced for u <= 1; refused for u > 1.
bool uv_boundary_is_zero(double u, double v) {
    if (v < std::min(1.0, u))
        return false;
    if (u <= 1.0)
        return true;
    throw std::domain_error("mu: v = 1 is outside the domain for u > 1");
}

uint64_t splitmix64(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

// ---------------------------------------------------------------------------

void MuParams::validate() const {
    check_uv_domain(u, v);
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::domain_error("MuParams: kappa must be positive");
    if (k < 1)
        throw std::domain_error("MuParams: k must be >= 1");
}

void ThetaProfile::validate() const {
    if (!(theta > 0.0) || theta > 1.0)
        throw std::domain_error("ThetaProfile: theta must lie in (0, 1]");
    if (!(delta > 0.0))
        throw std::domain_error("ThetaProfile: delta must be positive");
    if (!(kappa > 0.0))
        throw std::domain_error("ThetaProfile: kappa must be positive");
}

ThetaProfile ThetaProfile::harper_half() { return {0.5, 1.0, 1.0, "harper-half"}; }
ThetaProfile ThetaProfile::pascadi_58() { return {0.625, 1.0, 1.0, "pascadi-5/8"}; }
ThetaProfile ThetaProfile::elliott_halberstam(double eps) {
    return {1.0 - eps, 1.0, 1.0, "elliott-halberstam"};
}

double dickman_rho(double u, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(u) || u < 0.0)
        throw std::domain_error("dickman_rho: u must be a nonnegative finite real");
    if (u > kRhoMaxU)
        throw std::domain_error("dickman_rho: u > 64 is outside the desk range");
    if (u <= 1.0)
        return 1.0;
    if (u <= 2.0)
        return 1.0 - std::log(u);
    const int spu = steps_per_unit(cfg);
    return rho_table(spu, static_cast<int>(std::ceil(u)))->eval(u);
}

double f_k(double u, std::span<const double> t) {
    if (!std::isfinite(u))
        throw std::domain_error("f_k: u must be finite");
    double prod = 1.0, partial = 0.0;
    for (double ti : t) {
        partial += ti;
        if (partial >= u)
            throw std::domain_error("f_k: partial sum reaches the pole u");
        prod /= (u - partial);
    }
    return prod;
}

double mu_k(const MuParams& params, const QuadratureConfig& cfg) {
    cfg.validate();
    params.validate();
    if (params.k == 1)
        return mu1_value(params.u, params.v);
    if (params.u <= 1.0)
        return 0.0;
    const int spu = steps_per_unit(cfg);
    const int units = static_cast<int>(std::ceil(params.u - 1e-12));
    return mu_levels(params.v, spu, units)->value(params.k, params.u);
}

double mu_k_direct(const MuParams& params, const QuadratureConfig& cfg, uint64_t seed) {
    cfg.validate();
    params.validate();
    if (params.k < 2)
        throw std::domain_error("mu_k_direct: k must be >= 2");
    const double u = params.u, v = params.v;
    const int k = params.k;
    if (u <= 1.0 || v >= 1.0)
        return 0.0;   // V_k is empty

    // Length of the t_k slice once t_1..t_{k-1} (summing to T < u-1) are fixed.
    auto slice_len = [&](double T) {
        const double lo = std::max(0.0, u - 1.0 - T);
        const double hi = std::min(1.0, u - v - T);
        return std::max(0.0, hi - lo);
    };

    if (k <= 4) {
        const double tol = (k <= 3) ? std::max(cfg.abs_tol, 1e-9) : 3e-7;
        std::function<double(int, double, double)> inner =
            [&](int depth, double T, double weight) -> double {
            // depth counts the variables t_1..t_{k-1} already fixed.
            if (depth == k - 1)
                return weight * slice_len(T);
            const double hi = std::min(1.0, u - 1.0 - T);
            if (hi <= 0.0)
                return 0.0;
            return adaptive_simpson(
                [&](double t) { return inner(depth + 1, T + t, weight / (u - T - t)); },
                0.0, hi, tol, cfg.rel_tol, cfg.max_subdivisions);
        };
        return inner(0, 0.0, 1.0) / u;
    }

    // Quasi-random (Kronecker) integration over (0,1)^{k-1}; >= 10^6 nodes.
    static const double kIrr[8] = {0.41421356237309515, 0.7320508075688772, 0.23606797749978969,
                                   0.6457513110645906,  0.3166247903553998, 0.60555127546398912,
                                   0.12310562561766059, 0.35889894354067355};
    uint64_t s = seed * 0x9e3779b97f4a7c15ULL + 1;
    std::vector<double> shift(k - 1);
    for (int j = 0; j < k - 1; ++j)
        shift[j] = (splitmix64(s) >> 11) * 0x1.0p-53;
    const uint64_t N = 1ULL << 22;
    double acc = 0.0, comp = 0.0;
    std::vector<double> t(k - 1);
    for (uint64_t n = 1; n <= N; ++n) {
        double T = 0.0, weight = 1.0;
        bool ok = true;
        for (int j = 0; j < k - 1; ++j) {
            double tj = shift[j] + n * kIrr[j % 8];
            tj -= std::floor(tj);
            T += tj;
            if (T >= u - 1.0) {
                ok = false;
                break;
            }
            weight /= (u - T);
        }
        if (!ok)
            continue;
        const double term = weight * slice_len(T);
        const double y = term - comp;
        const double nacc = acc + y;
        comp = (nacc - acc) - y;
        acc = nacc;
    }
    return acc / (u * static_cast<double>(N));
}

double mu_series(double u, double v, double kappa, const QuadratureConfig& cfg) {
    cfg.validate();
    check_uv_domain(u, v);
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::domain_error("mu_series: kappa must be positive");
    if (uv_boundary_is_zero(u, v))
        return 0.0;

    const double bound = (u <= 1.0) ? kappa : std::pow(1.0 + u, kappa);
    const int kmin = static_cast<int>(std::ceil(u)) + 2;
    const int spu = steps_per_unit(cfg);
    const int units = static_cast<int>(std::ceil(std::max(u, 1.0) - 1e-12));
    std::shared_ptr<MuLevels> levels;
    double sum = 0.0, weight = 1.0;
    for (int k = 1; k <= 400; ++k) {
        weight *= kappa;
        double mk;
        if (k == 1) {
            mk = mu1_value(u, v);
        } else if (u <= 1.0) {
            mk = 0.0;
        } else {
            if (!levels)
                levels = mu_levels(v, spu, units);
            mk = levels->value(k, u);
        }
        const double term = weight * std::max(mk, 0.0);
        sum += term;
        if (sum > bound + 1e-9)
            throw std::runtime_error("mu_series: partial sum exceeded the Prop 3.3 cap");
        if (term < cfg.series_tail_tol && k >= kmin)
            return sum;
    }
    throw std::runtime_error("mu_series: series did not converge within 400 terms");
}

double mu_closed(double u, double v, double kappa, const QuadratureConfig& cfg) {
    cfg.validate();
    check_uv_domain(u, v);
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::domain_error("mu_closed: kappa must be positive");
    if (uv_boundary_is_zero(u, v))
        return 0.0;
    if (u <= 2.0)
        return mu_closed_upto2(u, v, kappa);
    const int spu = steps_per_unit(cfg);
    const int units = static_cast<int>(std::ceil(u - 1e-12));
    return mu_closed_table(v, kappa, spu, units)->eval(u);
}

double rho_theta(double u, const ThetaProfile& profile, const QuadratureConfig& cfg) {
    cfg.validate();
    profile.validate();
    if (!std::isfinite(u) || u <= 0.0)
        throw std::domain_error("rho_theta: u must be a positive finite real");
    const double theta = profile.theta, kappa = profile.kappa;
    double v = (1.0 - theta) * u;
    const bool closed_endpoint_ok = v <= 1.0 + 1e-12;
    if (v > 1.0 && closed_endpoint_ok)
        v = 1.0;

    if (theta <= 0.5 && u > 1.0 && closed_endpoint_ok)
        return kappa * (1.0 - v) * std::pow(u, kappa - 1.0);
    if (theta > 0.5 && theta <= 2.0 / 3.0 && std::abs(kappa - 1.0) < kKappaOneEps &&
        u > 1.0 && closed_endpoint_ok) {
        double r = 1.0 - v;
        if (u > 1.0 / theta)
            r += std::log(1.0 / u + 1.0 - theta);
        if (u > 2.0)
            r += v * std::log(u / 2.0);
        return r;
    }
    if (v >= 1.0)
        throw std::domain_error("rho_theta: hypothesis (1-theta)u < 1 violated");
    return mu_closed(u, v, kappa, cfg);
}

double gamma_eu(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("gamma_eu: x must be positive");
    return std::tgamma(x);
}

} // namespace friable
