#include "qad/fixed_point.hpp"

#include <cmath>
#include <sstream>

namespace qad {

double FixedPointFormat::resolution() const { return std::ldexp(1.0, -frac_bits); }

double FixedPointFormat::min_value() const { return -std::ldexp(1.0, int_bits - 1); }

double FixedPointFormat::max_value() const {
    return std::ldexp(1.0, int_bits - 1) - resolution();
}

FixedPointFormat FixedPointFormat::make(int int_bits, int frac_bits) {
    if (int_bits < 1 || frac_bits < 0 || int_bits + frac_bits > 64)
        throw Error("invalid fixed-point format Q(" + std::to_string(int_bits) + "," +
                    std::to_string(frac_bits) + ")");
    return FixedPointFormat{int_bits, frac_bits};
}

namespace {

std::uint64_t width_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

std::int64_t FixedPointValue::to_signed() const {
    const int n = format.total_bits();
    std::uint64_t u = bits & width_mask(n);
    if (n < 64 && (u >> (n - 1)) & 1) u |= ~width_mask(n);  // sign extend
    return static_cast<std::int64_t>(u);
}

double FixedPointValue::to_real() const {
    return std::ldexp(static_cast<double>(to_signed()), -format.frac_bits);
}

std::string FixedPointValue::to_bit_string() const {
    std::string out;
    out.reserve(format.total_bits() + 1);
    for (int i = format.total_bits() - 1; i >= 0; --i) {
        out.push_back(((bits >> i) & 1) ? '1' : '0');
        if (i == format.frac_bits && format.frac_bits > 0) out.push_back('.');
    }
    return out;
}

FixedPointValue FixedPointValue::from_bit_string(const std::string& s) {
    int int_bits = 0, frac_bits = 0;
    bool seen_point = false;
    std::uint64_t bits = 0;
    for (char c : s) {
        if (c == '.') {
            if (seen_point) throw Error("bit string has two radix points: " + s);
            seen_point = true;
            continue;
        }
        if (c != '0' && c != '1') throw Error("bad bit-string character in: " + s);
        bits = (bits << 1) | (c == '1' ? 1 : 0);
        (seen_point ? frac_bits : int_bits)++;
    }
    FixedPointValue v;
    v.format = FixedPointFormat::make(int_bits, frac_bits);
    v.bits = bits;
    return v;
}

FixedPointValue encode(double x, FixedPointFormat fmt) {
    // Scaling by 2^b is exact in binary floating point, so the floor below is
    // the true floor of x * 2^b for any double input.
    const double scaled = std::floor(std::ldexp(x, fmt.frac_bits));
    const int n = fmt.total_bits();
    const double lo = -std::ldexp(1.0, n - 1);
    const double hi = std::ldexp(1.0, n - 1);  // exclusive
    if (!(scaled >= lo && scaled < hi)) {
        std::ostringstream msg;
        msg << "value " << x << " outside representable range [" << fmt.min_value() << ", "
            << fmt.max_value() << "] of Q(" << fmt.int_bits << "," << fmt.frac_bits << ")";
        throw OverflowError(msg.str());
    }
    FixedPointValue v;
    v.format = fmt;
    v.bits = static_cast<std::uint64_t>(static_cast<std::int64_t>(scaled)) & width_mask(n);
    return v;
}

double decode(const FixedPointValue& v) { return v.to_real(); }

double truncate_to(double x, FixedPointFormat fmt) { return decode(encode(x, fmt)); }

}  // namespace qad
