#include "symdom/series.hpp"

#include <cmath>

namespace symdom {

namespace {

void check_order(const Series1& a, const Series1& b) {
    if (a.order() != b.order()) throw RejectedInput("series order mismatch");
}

}  // namespace

Series1::Series1(int order, cd c0) : c_(order + 1, 0.0) {
    if (order < 0) throw RejectedInput("negative series order");
    c_[0] = c0;
}

Series1 Series1::variable(int order, cd c0) {
    Series1 s(order, c0);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
}

cd Series1::derivative_at_zero(int k) const {
    if (k > order()) throw RejectedInput("derivative beyond the truncation order");
    return c_[k] * std::tgamma(double(k) + 1.0);
}

Series1& Series1::operator+=(const Series1& o) {
    check_order(*this, o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Series1& Series1::operator-=(const Series1& o) {
    check_order(*this, o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Series1& Series1::operator*=(cd s) {
    for (auto& c : c_) c *= s;
    return *this;
}

Series1 operator+(Series1 a, const Series1& b) { return a += b; }
Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
Series1 operator*(cd s, Series1 a) { return a *= s; }

Series1 operator*(const Series1& a, const Series1& b) {
    check_order(a, b);
    const int n = a.order();
    Series1 out(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == cd(0.0)) continue;
        for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

Series1 operator/(const Series1& a, const Series1& b) {
    check_order(a, b);
    if (b[0] == cd(0.0)) throw SingularElement("series division by a series vanishing at 0");
    const int n = a.order();
    Series1 q(n);
    for (int k = 0; k <= n; ++k) {
        cd acc = a[k];
        for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
        q[k] = acc / b[0];
    }
    return q;
}

Series1 pow(const Series1& a, double p) {
    const int n = a.order();
    if (p >= 0 && p == std::floor(p)) {
        Series1 out(n, 1.0);
        for (int i = 0; i < static_cast<int>(p); ++i) out = out * a;
        return out;
    }
    if (a[0] == cd(0.0)) throw SingularElement("non-integer power of a series vanishing at 0");
    // b = a^p satisfies a b' = p a' b
    Series1 b(n, std::pow(a[0], p));
    for (int k = 1; k <= n; ++k) {
        cd acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += (p * j - (k - j)) * a[j] * b[k - j];
        b[k] = acc / (double(k) * a[0]);
    }
    return b;
}

Series1 compose(const std::vector<cd>& coeffs, const Series1& a) {
    Series1 out(a.order());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        out = out * a;
        out[0] += *it;
    }
    return out;
}

}  // namespace symdom
