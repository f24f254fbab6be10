#pragma once

// Truncated univariate power series sum_k c_k t^k, k <= order.

#include <vector>

#include "symdom/types.hpp"

namespace symdom {

class Series1 {
public:
    explicit Series1(int order, cd c0 = 0.0);
    static Series1 variable(int order, cd c0 = 0.0);  // c0 + t

    int order() const { return static_cast<int>(c_.size()) - 1; }
    cd operator[](int k) const { return c_[k]; }
    cd& operator[](int k) { return c_[k]; }
    const std::vector<cd>& coeffs() const { return c_; }
    // k-th derivative at t = 0
    cd derivative_at_zero(int k) const;

    Series1& operator+=(const Series1& o);
    Series1& operator-=(const Series1& o);
    Series1& operator*=(cd s);

private:
    std::vector<cd> c_;
};

Series1 operator+(Series1 a, const Series1& b);
Series1 operator-(Series1 a, const Series1& b);
Series1 operator*(cd s, Series1 a);
Series1 operator*(const Series1& a, const Series1& b);
Series1 operator/(const Series1& a, const Series1& b);  // b[0] != 0
// a^p with the principal branch of a[0]^p; a[0] != 0 unless p is a non-negative integer.
Series1 pow(const Series1& a, double p);
// sum_k coeffs[k] a^k by Horner
Series1 compose(const std::vector<cd>& coeffs, const Series1& a);

}  // namespace symdom
