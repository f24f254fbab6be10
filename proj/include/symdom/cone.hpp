#pragma once

// Determinant polynomials, generalized powers, cone membership and the
// simply transitive lower-triangular group acting on the symmetric cone.

#include <random>

#include "symdom/eja.hpp"

namespace symdom {

// Leading principal minors (quaternionic minors via the complex embedding,
// x, y - |z|^2 for the spin factor). j runs from 1 to rank.
double delta_j(const Algebra& A, const Vec& x, int j);
cd delta_j(const Algebra& A, const CVec& w, int j);
// Minors for the reversed frame e_r, ..., e_1.
double delta_j_star(const Algebra& A, const Vec& x, int j);

// prod_j Delta_j(x)^{s_j - s_{j+1}}. Non-integer s requires x in the cone.
double delta_power(const Algebra& A, const Vec& x, const Vec& s);

// Continuous branch of log Delta_j on the tube (real part in the cone), real on the cone.
cd log_delta_j(const Algebra& A, const CVec& w, int j);
cd delta_power_complex(const Algebra& A, const CVec& w, const CVec& s);
// Delta_r(w)^{-lambda} on the tube.
cd det_power(const Algebra& A, const CVec& w, double lambda);

bool in_cone(const Algebra& A, const Vec& x, double tol = 0.0);
double min_eigenvalue(const Algebra& A, const Vec& x);

// Matrix families store the lower-triangular factor in the complex embedding
// and act by x -> t x t*. The spin factor stores t = [[t11, 0], [u, t22]] and
// acts by x -> (t x) t* with the half-matrix product.
struct TriangularElement {
    Family family = Family::SymReal;
    CMat t;
    double t11 = 1.0, t22 = 1.0;
    Vec u;
};

TriangularElement triangular_identity(const Algebra& A);
TriangularElement cholesky_t(const Algebra& A, const Vec& x);
TriangularElement compose(const Algebra& A, const TriangularElement& a, const TriangularElement& b);
TriangularElement inverse(const Algebra& A, const TriangularElement& t);
Vec t_action(const Algebra& A, const TriangularElement& t, const Vec& x);
CVec t_action(const Algebra& A, const TriangularElement& t, const CVec& x);
Vec triangular_diagonal(const Algebra& A, const TriangularElement& t);
// t -> prod_j t_jj^{2 s_j}
double character(const Algebra& A, const TriangularElement& t, const Vec& s);
// Diagonal log-scale `diag_log`, strictly lower entries from `lower` (length dim - rank).
TriangularElement triangular_from_params(const Algebra& A, const Vec& diag_log, const Vec& lower);
TriangularElement random_triangular(const Algebra& A, std::mt19937_64& rng, double scale = 0.5);

}  // namespace symdom
