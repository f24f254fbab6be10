#pragma once

// Helpers shared by the unit tests.

#include <random>
#include <vector>

#include "symdom/invariant.hpp"

namespace symdom::test {

inline std::vector<FamilySpec> all_specs() {
    return {disc_spec(),
            ball_spec(3),
            {Family::SymReal, 2, 0},
            {Family::SymReal, 3, 0},
            {Family::HermComplex, 2, 3},
            {Family::HermComplex, 3, 0},
            {Family::HermQuaternion, 2, 0},
            {Family::SpinFactor, 4, 0},
            {Family::SpinFactor, 5, 0}};
}

inline Vec gaussian_vec(int n, Rng& rng) {
    std::normal_distribution<double> nd;
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = nd(rng);
    return x;
}

inline CVec gaussian_cvec(int n, Rng& rng) {
    std::normal_distribution<double> nd;
    CVec z(n);
    for (int i = 0; i < n; ++i) {
        const double re = nd(rng);
        z(i) = cd(re, nd(rng));
    }
    return z;
}

// x^2 + margin e, strictly inside the cone.
inline Vec cone_point(const Algebra& A, Rng& rng, double margin = 0.1) {
    const Vec x = gaussian_vec(A.dim(), rng);
    return jordan_product(A, x, x) + margin * identity(A);
}

inline SparsePolynomial random_polynomial(int nvars, int max_degree, Rng& rng) {
    SparsePolynomial p(nvars);
    for (int k = 0; k <= max_degree; ++k)
        for (MonoKey m : homogeneous_monomials(nvars, k)) {
            const CVec c = gaussian_cvec(1, rng);
            p.add_term(m, c(0));
        }
    return p;
}

inline SparsePolynomial z_power(int k) { return SparsePolynomial::monomial(1, {k}); }

}  // namespace symdom::test
