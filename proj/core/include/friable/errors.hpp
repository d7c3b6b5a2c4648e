#pragma once

#include <stdexcept>
#include <string>

namespace friable {

// Raised when an input is mathematically valid but exceeds the desk-scale
// budgets this library commits to (segment sizes, brute-force scans, ...).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace friable
