#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "friable/dickman.hpp"

namespace friable {

// Integer-coefficient polynomial, constant term first.
struct IntPolynomial {
    std::vector<long long> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    void validate() const;

    // Signed value, exact in 128 bits.
    __int128 eval(long long n) const;
    // |F(n)| as uint64; throws capacity_error past 2^63.
    uint64_t eval_abs64(long long n) const;

    // "a0,a1,...,ag"
    static IntPolynomial parse(const std::string& spec);
    static IntPolynomial x_squared_plus_one() { return {{1, 0, 1}}; }
};

// Homogeneous form sum_i c[i] X^i Y^(t-i); degree t = c.size()-1.
struct BinaryForm {
    std::vector<long long> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    void validate() const;

    __int128 eval(long long a, long long b) const;
    uint64_t eval_abs64(long long a, long long b) const;
    IntPolynomial dehomogenize() const;   // F(X, 1)

    static BinaryForm parse(const std::string& spec);
};

// Exact nonnegative rational, reduced.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const = default;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Sorted residues x in [0, m) with F(x) = 0 (mod m).  Prime-power moduli go
// through Hensel lifting (enumeration fallback for degenerate roots, capped
// at p^a <= 10^6); composite moduli are assembled by CRT.
std::vector<uint64_t> roots_mod(const IntPolynomial& F, uint64_t m);

// Number of roots of F mod d (multiplicative in d).
uint64_t gamma_poly(const IntPolynomial& F, uint64_t d);

// Exact Psi_F(x, y) = #{n <= x : F(n) != 0, P+(|F(n)|) <= y} by a value sieve.
uint64_t psi_poly(const IntPolynomial& F, uint64_t x, uint64_t y);

// gamma*(d) = #{1 <= a,b <= d : F(a,b) = 0 (mod d), gcd(a,b,d) = 1} / d,
// exact rational, multiplicative in d.
Rational gamma_star(const BinaryForm& F, uint64_t d);

// Exact #{1 <= a,b <= x : F(a,b) != 0, P+(|F(a,b)|) <= y}; optionally only
// coprime pairs gcd(a,b) = 1.
uint64_t psi_binary(const BinaryForm& F, uint64_t x, uint64_t y, bool coprime_only = false);

// r_d = A_d - gamma_F(d) x / d with A_d = #{n <= x : d | F(n)} exact.
double remainder_poly(const IntPolynomial& F, uint64_t d, uint64_t x);

// Per-modulus residuals with aggregate statistics against the (C_theta)
// target X/(log y)^delta.
struct RemainderReport {
    uint64_t D = 1;                    // summation bound
    double X_norm = 0.0;               // normalizing count X
    std::map<uint64_t, double> entries;
    double abs_sum = 0.0;
    double target = 0.0;
};

RemainderReport remainder_report(const IntPolynomial& F, uint64_t x, uint64_t D,
                                 double y, const ThetaProfile& profile);

// Same for a binary form over coprime pairs (X = x^2); desk-scale only.
RemainderReport binary_remainder_report(const BinaryForm& F, uint64_t x, uint64_t D,
                                        double y, const ThetaProfile& profile);

} // namespace friable
