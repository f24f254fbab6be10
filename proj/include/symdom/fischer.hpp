#pragma once

// Fischer inner product machinery on a domain: the isotropy group K, the
// determinant polynomials as polynomials on Z, orbit spans, the K-type
// projections pi_s and Taylor expansions of the kernels.

#include <map>
#include <mutex>

#include "symdom/domains.hpp"
#include "symdom/parallel.hpp"
#include "symdom/poly.hpp"
#include "symdom/wallach.hpp"

namespace symdom {

// Complex-linear automorphism of Z fixing 0, as a matrix on Z coordinates.
struct KSample {
    CMat L;
};

KSample k_identity(const Domain& D);
KSample haar_sample_K(const Domain& D, Rng& rng);
CVec apply_k(const KSample& k, const CVec& z);

// Delta_j as a polynomial in the Z coordinates, normalized by Delta_j(e) = 1.
SparsePolynomial delta_poly(const Domain& D, int j);
// Generic norm h(., w) as a polynomial of degree rank.
SparsePolynomial generic_norm_poly(const Domain& D, const CVec& w);
// Taylor polynomial at 0 of z -> kernel_bounded(lambda, z, w), exact to max_degree.
SparsePolynomial kernel_taylor(const Domain& D, double lambda, const CVec& w, int max_degree);

struct GeneratorFactor {
    SparsePolynomial poly;
    int exponent;
};
// prod_j Delta_j^{s_j - s_{j+1}} kept in factored form.
std::vector<GeneratorFactor> delta_s_factors(const Domain& D, const Signature& s);
SparsePolynomial expand_factors(const std::vector<GeneratorFactor>& f, int nvars);

// Orthonormal basis (Fischer product) of a space of homogeneous polynomials of one degree.
struct OrbitBasis {
    int degree = 0;
    int nvars = 0;
    std::vector<MonoKey> monos;
    CMat Q;  // columns orthonormal in the sqrt(alpha!)-scaled coordinates
    int rank() const { return static_cast<int>(Q.cols()); }
    SparsePolynomial element(int i) const;
};

// Gram-Schmidt span of {generator o k : k in samples}; residuals below tol
// relative to the candidate norm are discarded.
OrbitBasis orbit_span(const std::vector<GeneratorFactor>& generator, const std::vector<KSample>& samples,
                      double tol = 1e-8, Exec exec = Exec::Parallel);
OrbitBasis orbit_span(const SparsePolynomial& generator, const std::vector<KSample>& samples,
                      double tol = 1e-8, Exec exec = Exec::Parallel);

struct OrbitSpanOptions {
    int batch_size = 32;
    int plateau_batches = 3;
    int max_batches = 64;
    double tol = 1e-8;
    std::uint64_t seed = 1;
    Exec exec = Exec::Parallel;
};

// Draws batches of Haar samples until the rank is unchanged for
// plateau_batches batches (or fills the homogeneous space). Throws
// RankNotStable after max_batches.
OrbitBasis orbit_span_adaptive(const Domain& D, const std::vector<GeneratorFactor>& generator,
                               const OrbitSpanOptions& opt, std::uint64_t stream);

SparsePolynomial project_onto(const SparsePolynomial& f, const OrbitBasis& b);

// Lazily built bases of P_s. Rank one uses the closed form (all monomials of
// degree k); higher rank uses adaptive orbit spans seeded per signature.
class ProjectionCache {
public:
    ProjectionCache(const Domain& D, OrbitSpanOptions opt = {});

    const Domain& domain() const { return D_; }
    const OrbitBasis& basis(const Signature& s);
    // Builds every signature with |s| <= max_degree (parallel over signatures).
    void prebuild(int max_degree);
    SparsePolynomial project(const SparsePolynomial& f, const Signature& s);
    int dim(const Signature& s) { return basis(s).rank(); }

private:
    OrbitBasis build(const Signature& s) const;

    Domain D_;
    OrbitSpanOptions opt_;
    std::map<Signature, OrbitBasis> cache_;
    std::mutex mu_;
};

// Fischer projection onto P_s using an explicit basis.
SparsePolynomial project_Ps(const SparsePolynomial& f, const OrbitBasis& basis);
int dim_Ps(const Domain& D, const Signature& s, const OrbitSpanOptions& opt = {});

// Delta(d/dz) applied k times, in the trace-form coordinates (tube domains).
SparsePolynomial box_operator(const Domain& D, const SparsePolynomial& f, int k = 1);

}  // namespace symdom
