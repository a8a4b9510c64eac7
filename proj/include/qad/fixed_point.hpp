#pragma once

#include <cstdint>
#include <string>

#include "qad/errors.hpp"

namespace qad {

// Q(m,b) two's-complement fixed point: m integer bits (sign included),
// b fractional bits, resolution 2^-b.
struct FixedPointFormat {
    int int_bits  = 8;
    int frac_bits = 24;

    int total_bits() const { return int_bits + frac_bits; }
    double resolution() const;
    double min_value() const;  // -2^(m-1)
    double max_value() const;  // 2^(m-1) - 2^-b

    bool operator==(const FixedPointFormat&) const = default;

    /// Validates 1 <= m, 0 <= b, m + b <= 64.
    static FixedPointFormat make(int int_bits, int frac_bits);
};

struct FixedPointValue {
    std::uint64_t bits = 0;  // low total_bits() are significant
    FixedPointFormat format;

    std::int64_t to_signed() const;
    double to_real() const;

    /// Big-endian binary with explicit radix point, e.g. "0010.1000".
    std::string to_bit_string() const;
    static FixedPointValue from_bit_string(const std::string& s);

    bool operator==(const FixedPointValue&) const = default;
};

/// Floor of x to a multiple of 2^-b, as a bit pattern. Throws OverflowError
/// when x is outside the representable range.
FixedPointValue encode(double x, FixedPointFormat fmt);

double decode(const FixedPointValue& v);

/// decode(encode(x, fmt)); the truncation applied after every node output.
double truncate_to(double x, FixedPointFormat fmt);

}  // namespace qad
