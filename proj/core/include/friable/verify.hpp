#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "friable/dickman.hpp"
#include "friable/polyvals.hpp"
#include "friable/quadrature.hpp"
#include "friable/saddle.hpp"

namespace friable {

// A finite set of distinct positive integers with cached factorizations.
class FiniteSet {
public:
    static FiniteSet from_elements(std::vector<uint64_t> elements);
    static FiniteSet range(uint64_t n);                                // {1..n}
    static FiniteSet poly_values(const IntPolynomial& F, uint64_t n);  // {|F(k)| : k<=n, F(k)!=0}

    const std::vector<uint64_t>& elements() const { return elems_; }
    uint64_t x_sup() const { return elems_.back(); }
    uint64_t size() const { return elems_.size(); }

    uint64_t lpf(size_t idx) const { return lpf_[idx]; }
    std::span<const PrimePower> factors(size_t idx) const { return fact_[idx]; }

    uint64_t psi_y(uint64_t y) const;                    // Psi_A(y)
    uint64_t psi_yd(uint64_t y, uint64_t d) const;       // Psi_A(y, d)
    uint64_t count_divisible(uint64_t d) const;          // A_d

private:
    std::vector<uint64_t> elems_;
    std::vector<uint64_t> lpf_;
    std::vector<std::vector<PrimePower>> fact_;
    void build_factors();
};

// Q(x; p_1..p_k) = prod log p_i / prod log(x / (p_1...p_i)); 1 when empty.
double q_factor(double x, std::span<const uint64_t> primes);

struct HildebrandResult {
    double lhs = 0.0;             // Psi_A(y) log x
    double rhs = 0.0;             // step-function integral + sum Lambda(d) Psi_A(y,d)
    double corollary_rhs = 0.0;   // sum_p Psi_A(y,p) log p
};

// Exact identity check; throws std::logic_error if |lhs-rhs| > 1e-9 lhs or
// the corollary inequality fails.
HildebrandResult hildebrand_check(const FiniteSet& A, uint64_t y);

// T(y,n) and R(y,n) of the sieve recursion, exact; n must be y-smooth.
double t_fn(const FiniteSet& A, uint64_t y, uint64_t n);
double r_fn(const FiniteSet& A, uint64_t y, uint64_t n);

// Outcome of one two-sided comparison.
struct BoundCheck {
    double empirical_density = 0.0;   // the measured side
    double coefficient = 0.0;         // the theoretical side
    double margin = 0.0;              // empirical - coefficient
    bool passed = false;              // margin >= -tolerance
};

// T(y,1) >= R(y,1) + sum_{i<=k} sum Q(...) R(...) over prime tuples.
// k in {1,2,3}; relative slack 1e-9.
BoundCheck check_recursion(const FiniteSet& A, uint64_t y, int k);

// Convex region as predicate + axis-aligned bounding box.
struct ConvexRegion {
    int dim = 1;
    std::vector<std::array<double, 2>> bbox;
    std::function<bool(std::span<const double>)> contains;

    static ConvexRegion box(std::vector<std::array<double, 2>> b);
    static ConvexRegion simplex(int dim, double cap);   // {t >= 0 : sum t_i <= cap} in [0,1]^dim
    static ConvexRegion empty(int dim);
};

struct MertensResult {
    double sum = 0.0;        // prime-tuple sum weighted by gamma(p) log p / (p log y)
    double integral = 0.0;   // kappa^k int_U f
    double error = 0.0;      // |sum - integral|
};

using GammaFn = std::function<double(uint64_t)>;

// Multidimensional Mertens comparison (k <= 3).
MertensResult mertens_multidim(const GammaFn& gamma, const std::function<double(std::span<const double>)>& f,
                               const ConvexRegion& U, uint64_t y, int k, double kappa,
                               const QuadratureConfig& cfg = {});

struct ConditionReport {
    std::vector<uint64_t> grid;
    std::vector<double> deviations;   // sum_{p<=z} gamma(p) log p / p - kappa log z
    double max_abs_deviation = 0.0;
    double kappa_used = 1.0;
};

ConditionReport check_condition_A(const GammaFn& gamma, double kappa,
                                  std::span<const uint64_t> z_grid);

// sup over z in [zmin, zmax] of |sum_{p<=z} gamma(p) log p / p - kappa log z|
// (attained at prime boundaries, both sides evaluated).
double condition_A_sup(const GammaFn& gamma, double kappa, uint64_t zmin, uint64_t zmax);

enum class Application { plain, poly, binary, pairs };

struct LowerBoundQuery {
    Application application = Application::plain;
    uint64_t x = 2;
    uint64_t y = 2;                       // smoothness bound (plain/poly/binary)
    double u = 1.5, v = 2.0;              // pairs parameters
    long long a = 1;                      // pairs shift
    std::optional<IntPolynomial> poly;
    std::optional<BinaryForm> form;
    ThetaProfile profile = ThetaProfile::harper_half();
    double tolerance = 0.0;
};

// Empirical density from the exact counter vs. the theoretical coefficient
// (rho_theta or theorem_f); domain violations of the underlying theorem are
// reported as domain errors naming the constraint.
BoundCheck lower_bound_report(const LowerBoundQuery& q, const QuadratureConfig& cfg = {});

// One CSV row of a verification report.
struct CheckRow {
    std::string check_name;
    std::string parameter_json;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool passed = false;
};

void write_check_csv(std::ostream& os, std::span<const CheckRow> rows);

} // namespace friable
