#pragma once

#include <cmath>
#include <cstdint>

namespace zxcss {

// Exact scalar: zero, or sign * 2^(half_power/2).
struct Scalar {
    bool zero = false;
    int sign = 1;
    int64_t half_power = 0;

    static Scalar one() { return Scalar{}; }
    static Scalar zero_value() { return Scalar{true, 1, 0}; }
    static Scalar dyadic(int sign, int64_t half_power) { return Scalar{false, sign, half_power}; }

    bool is_one() const { return !zero && sign == 1 && half_power == 0; }

    Scalar& operator*=(const Scalar& o) {
        if (zero || o.zero) {
            *this = zero_value();
        } else {
            sign *= o.sign;
            half_power += o.half_power;
        }
        return *this;
    }
    friend Scalar operator*(Scalar a, const Scalar& b) {
        a *= b;
        return a;
    }

    // a / b for nonzero b.
    Scalar divided_by(const Scalar& o) const {
        if (zero) {
            return zero_value();
        }
        return Scalar{false, sign * o.sign, half_power - o.half_power};
    }

    bool operator==(const Scalar& o) const {
        if (zero || o.zero) {
            return zero == o.zero;
        }
        return sign == o.sign && half_power == o.half_power;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    double value() const { return zero ? 0.0 : sign * std::pow(2.0, half_power / 2.0); }
};

}  // namespace zxcss
