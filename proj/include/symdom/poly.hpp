#pragma once

// Sparse polynomials in complex coordinates z_0, ..., z_{n-1}.
//
// A monomial z^alpha is packed into a 64-bit key: the top 6 bits hold the total
// degree and each variable gets 6 bits, variable 0 most significant. Ordering
// keys as integers is therefore graded lexicographic order, and multiplying
// monomials is adding keys. Limits: 9 variables, total degree 63.

#include <cstdint>
#include <map>
#include <vector>

#include "symdom/types.hpp"

namespace symdom {

using MonoKey = std::uint64_t;

inline constexpr int kMaxVars = 9;
inline constexpr int kMaxDegree = 63;

MonoKey make_key(const std::vector<int>& alpha);
std::vector<int> key_exponents(MonoKey k, int nvars);
int key_degree(MonoKey k);
// alpha! = prod alpha_i!
double key_factorial(MonoKey k, int nvars);

class SparsePolynomial {
public:
    explicit SparsePolynomial(int nvars = 0);

    static SparsePolynomial constant(int nvars, cd c);
    static SparsePolynomial variable(int nvars, int i, cd c = 1.0);
    static SparsePolynomial monomial(int nvars, const std::vector<int>& alpha, cd c = 1.0);
    // sum_i a_i z_i
    static SparsePolynomial linear(const CVec& a);

    int nvars() const { return n_; }
    const std::map<MonoKey, cd>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    int degree() const;  // -1 for the zero polynomial

    void add_term(MonoKey k, cd c);
    cd coeff(const std::vector<int>& alpha) const;
    cd eval(const CVec& z) const;

    SparsePolynomial homogeneous_part(int k) const;
    SparsePolynomial truncated(int max_degree) const;
    // Drop coefficients with |c| <= tol * max |c|.
    SparsePolynomial pruned(double tol) const;

    SparsePolynomial& operator+=(const SparsePolynomial& o);
    SparsePolynomial& operator-=(const SparsePolynomial& o);
    SparsePolynomial& operator*=(cd c);

private:
    int n_;
    std::map<MonoKey, cd> t_;
};

SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b);
SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b);
SparsePolynomial operator*(cd c, SparsePolynomial a);
SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b);

SparsePolynomial multiply(const SparsePolynomial& a, const SparsePolynomial& b,
                          int max_degree = kMaxDegree);
SparsePolynomial power(const SparsePolynomial& p, int k, int max_degree = kMaxDegree);
// p(L z)
SparsePolynomial compose_linear(const SparsePolynomial& p, const CMat& L, int max_degree = kMaxDegree);
// p(L z + c)
SparsePolynomial compose_affine(const SparsePolynomial& p, const CMat& L, const CVec& c,
                                int max_degree = kMaxDegree);
// p(R z)
SparsePolynomial dilate(const SparsePolynomial& p, cd R);
SparsePolynomial derivative(const SparsePolynomial& p, int i);
// exp(p) truncated; p must have zero constant term.
SparsePolynomial exp_series(const SparsePolynomial& p, int max_degree);

// sum_alpha alpha! a_alpha conj(b_alpha)
cd fischer_inner(const SparsePolynomial& p, const SparsePolynomial& q);
double fischer_norm(const SparsePolynomial& p);

// Monomials of total degree k in graded-lex order.
std::vector<MonoKey> homogeneous_monomials(int nvars, int k);
int homogeneous_dim(int nvars, int k);

// Homogeneous degree-k polynomials as vectors in the Fischer-orthonormal
// coordinates v_alpha = sqrt(alpha!) a_alpha.
CVec to_fischer_vector(const SparsePolynomial& p, const std::vector<MonoKey>& monos);
SparsePolynomial from_fischer_vector(const CVec& v, const std::vector<MonoKey>& monos, int nvars);

}  // namespace symdom
