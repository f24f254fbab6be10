#include "symdom/rng.hpp"

#include <cmath>

namespace symdom {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (stream * 0xd1342543de82ef95ULL));
    h = splitmix64(h ^ index);
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return Rng(seq);
}

CMat haar_unitary(int n, Rng& rng) {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CMat z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) z(i, j) = cd(nd(rng), nd(rng));
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const cd d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

Mat haar_orthogonal(int n, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) z(i, j) = nd(rng);
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0) q.col(j) *= -1.0;
    return q;
}

Mat haar_special_orthogonal(int n, Rng& rng) {
    Mat q = haar_orthogonal(n, rng);
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

CVec uniform_complex_ball(int n, double radius, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = cd(nd(rng), nd(rng));
    const double rad = radius * std::pow(ud(rng), 1.0 / (2.0 * n));
    return v / v.norm() * rad;
}

}  // namespace symdom
