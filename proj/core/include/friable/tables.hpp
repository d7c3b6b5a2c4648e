#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "friable/polyvals.hpp"
#include "friable/saddle.hpp"

namespace friable {

struct FCurveRow {
    double u = 0.0;
    std::optional<double> f_harper;    // defined on (1, 2]
    std::optional<double> f_pascadi;   // defined on (1, 8/3]
    double dickman_rho = 0.0;
};

// u = 1.01 .. 2.66 in steps of 0.01 (exact hundredths).
std::vector<FCurveRow> f_curve_rows();

// Columns u, f_harper, f_pascadi, dickman_rho; deterministic byte-for-byte.
void write_f_curves_csv(std::ostream& os);

void write_remainder_csv(std::ostream& os, const RemainderReport& rep);

void write_shifted_remainder_csv(std::ostream& os, const ShiftedRemainderReport& rep);

} // namespace friable
