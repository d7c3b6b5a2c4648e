#pragma once

#include <cstdint>

#include "friable/dickman.hpp"

namespace friable {

// Saddle point alpha(x, z): the unique solution of
//   sum_{p <= z} log p / (p^alpha - 1) = log x.
struct SaddleContext {
    double x = 2.0;
    double z = 2.0;
    double alpha = 0.5;
    double residual = 0.0;   // value of the defining sum minus log x at alpha
};

SaddleContext solve_saddle(double x, double z);

// g_d(x, z) = prod_{p | d} (1 - p^(-alpha)); depends on d only through its
// radical.  g_1 = 1 and 0 < g_d < phi(d)/d for d > 1.
double g_d(const SaddleContext& ctx, uint64_t d);

// gamma(d) = (d / phi(d)) g_d(x, z); multiplicative, gamma(1) = 1.
double gamma_shifted(const SaddleContext& ctx, uint64_t d);

struct ShiftedConfig {
    long long a = 1;     // the shift, nonzero
    double u = 1.0;
    double v = 1.0;
    ThetaProfile profile = ThetaProfile::harper_half();

    void validate() const;
};

// Psi(x; u, v) = #{n <= x : P+(n) <= x^(1/u), P+(n+a) <= x^(1/v)}, exact.
// Shifts with n + a <= 0 are excluded from the count.
uint64_t psi_pairs(uint64_t x, const ShiftedConfig& cfg);

// Same with explicit smoothness thresholds.
uint64_t psi_pairs_thresholds(uint64_t x, uint64_t y1, uint64_t y2, long long a);

enum class Regime { harper_half, pascadi_58 };

// The lower-bound coefficient f(u) of the shifted-pair theorem:
// harper_half on (1, 2], pascadi_58 three-branch form on (1, 8/3].
double theorem_f(double u, Regime regime);

// r_d = A_d - Psi(x,z) g_d / phi(d) with the exact set
// A = {n <= x : P+(n+a) <= z}, so A_d = #{n <= x : d | n, P+(n+a) <= z}.
double remainder_shifted(const SaddleContext& ctx, uint64_t d, uint64_t x, uint64_t z,
                         long long a);

// Batch report over d <= D with (d, a) = 1 optionally enforced; also carries
// the residual against the progression-count convention Psi(x,z;a,d), whose
// difference from the set-based A_d is the O(1) boundary effect.
struct ShiftedRemainderRow {
    uint64_t d = 1;
    double r_set = 0.0;    // set-based A_d minus Psi(x,z) g_d/phi(d)
    double r_prog = 0.0;   // progression-count A_d variant
};

struct ShiftedRemainderReport {
    std::vector<ShiftedRemainderRow> rows;
    double abs_sum_set = 0.0;
    double abs_sum_prog = 0.0;
    double psi_xz = 0.0;
    double reference = 0.0;   // Psi(x,z)/log z, the scale the sums are judged against
};

ShiftedRemainderReport shifted_remainder_report(const SaddleContext& ctx, uint64_t x,
                                                uint64_t z, long long a, uint64_t D,
                                                bool coprime_only = true);

// floor(x^(1/u)) with a guard against representation error at integer powers.
uint64_t smoothness_threshold(uint64_t x, double u);

} // namespace friable
