#pragma once

// Bounded and Siegel realizations of the symmetric domain attached to an algebra.
//
// Coordinates on Z: type I domains (HermComplex, including the disc and the
// unit balls) use the row-major entries of a p x q matrix; every other family
// uses the trace-form coordinates of the complexified algebra. Siegel points
// carry zeta as the row-major entries of the p x (q-p) block and z in
// algebra coordinates.

#include <string>

#include "symdom/cone.hpp"
#include "symdom/rng.hpp"

namespace symdom {

FamilySpec disc_spec();
FamilySpec ball_spec(int n);
FamilySpec parse_family(const std::string& name, int size, int cols = 0);

class Domain {
public:
    explicit Domain(FamilySpec spec);

    const Algebra& algebra() const { return A_; }
    const AlgebraDescriptor& desc() const { return A_.desc(); }
    FamilySpec spec() const { return spec_; }
    std::string name() const;
    int dim() const { return dim_; }            // complex dimension of Z
    int zeta_dim() const { return desc().siegel_n; }
    int rank() const { return A_.rank(); }
    double genus() const { return desc().genus_g; }
    bool is_tube() const { return zeta_dim() == 0; }
    bool type_one() const { return A_.family() == Family::HermComplex; }
    bool is_rank_one_ball() const { return type_one() && rank() == 1; }
    bool has_matrix_picture() const { return A_.is_matrix(); }
    int multiplicity() const { return A_.multiplicity(); }
    int rows() const;
    int cols() const;

    CMat to_matrix(const CVec& z) const;
    CVec from_matrix(const CMat& Z) const;
    // Type I: algebra coordinates of the first p columns, and the remaining block.
    CVec z1_part(const CVec& z) const;
    CVec zeta_part(const CVec& z) const;
    CVec join(const CVec& z1, const CVec& zeta) const;

    CVec triple(const CVec& x, const CVec& y, const CVec& z) const;
    // The maximal tripotent e in Z coordinates.
    CVec e_point() const;

    // Spin factor only: xi = M c maps trace-form coordinates to standard
    // coordinates of C^m, where the bilinear square is Delta and |xi|^2 = |c|^2 / 2.
    const CMat& spin_standard() const { return spin_m_; }

private:
    FamilySpec spec_;
    Algebra A_;
    int dim_;
    CMat spin_m_;
};

struct SiegelPoint {
    CVec zeta;
    CVec z;
};

double spectral_norm(const Domain& D, const CVec& z);
bool in_bounded_domain(const Domain& D, const CVec& z, double tol = 0.0);

// Phi(zeta, zeta') = zeta zeta'^* for type I, zero for tube domains.
CVec phi_form(const Domain& D, const CVec& zeta, const CVec& zeta2);
// Im z - Phi(zeta), a real algebra element.
Vec siegel_height(const Domain& D, const SiegelPoint& p);
bool in_siegel_domain(const Domain& D, const SiegelPoint& p);
SiegelPoint siegel_base_point(const Domain& D);  // (0, i e)

SiegelPoint cayley(const Domain& D, const CVec& z);
CVec inverse_cayley(const Domain& D, const SiegelPoint& p);

// Delta^{-lambda}((z - conj z')/2i - Phi(zeta, zeta')), no normalizing constant.
cd kernel_siegel(const Domain& D, double lambda, const SiegelPoint& p, const SiegelPoint& q);
// h(z,w)^{-lambda}, normalized by K(z,0) = 1. Type I uses det(I - z w*);
// other families go through the Cayley transform.
cd kernel_bounded(const Domain& D, double lambda, const CVec& z, const CVec& w);
// Continuous log of the generic norm h(z,w) from its closed form.
cd log_generic_norm(const Domain& D, const CVec& z, const CVec& w);
// Delta((e - i z)/2)^{-lambda}: the factor turning f o C^{-1} into an element of
// the Siegel realization of H_lambda.
cd cayley_factor(const Domain& D, double lambda, const SiegelPoint& p);

// Automorphisms of the disc / unit ball: z -> U (P_b z - b + s Q_b z) / (1 - <z,b>).
struct MobiusMap {
    CVec b;
    CMat U;
};
MobiusMap mobius_identity(int n);
MobiusMap mobius_sample(const Domain& D, Rng& rng, double radius = 0.8);
CVec mobius_apply(const MobiusMap& phi, const CVec& z);
CVec mobius_apply_inverse(const MobiusMap& phi, const CVec& w);
cd mobius_jacobian(const MobiusMap& phi, const CVec& z);
// Continuous branch of J phi(z)^{lambda/g}, g = n + 1.
cd mobius_jacobian_power(const MobiusMap& phi, const CVec& z, double lambda);

// (zeta0, x0) . (t . p)
struct AffineMap {
    CVec zeta0;
    Vec x0;
    TriangularElement t;
};
AffineMap affine_identity(const Domain& D);
AffineMap affine_sample(const Domain& D, Rng& rng, double scale = 0.5);
SiegelPoint affine_apply(const Domain& D, const AffineMap& m, const SiegelPoint& p);
AffineMap affine_compose(const Domain& D, const AffineMap& a, const AffineMap& b);
AffineMap affine_inverse(const Domain& D, const AffineMap& m);
// |det| of the complex-linear part; the real Jacobian is its square.
double affine_abs_jacobian(const Domain& D, const AffineMap& m);
// Heisenberg product (zeta, x)(zeta', x').
std::pair<CVec, Vec> heisenberg_product(const Domain& D, const CVec& z1, const Vec& x1,
                                        const CVec& z2, const Vec& x2);

double invariant_measure_density(const Domain& D, const SiegelPoint& p);

// Uniform point of D by rejection; `attempts` receives the proposal count.
CVec sample_bounded(const Domain& D, Rng& rng, long* attempts = nullptr);
// Volume of the proposal region used by sample_bounded (Lebesgue, real coordinates).
double bounded_proposal_volume(const Domain& D);

struct SiegelSamplerParams {
    double x_scale = 1.0;
    double zeta_scale = 1.0;
    double log_diag_scale = 1.0;
    double lower_scale = 1.0;
    bool heavy_tails = true;  // Student-t / log-Laplace instead of Gaussian / log-normal
    double dof = 3.0;
};
struct SiegelSample {
    SiegelPoint p;
    double density;  // proposal density w.r.t. Lebesgue measure on real coordinates
};
SiegelSample sample_siegel(const Domain& D, Rng& rng, const SiegelSamplerParams& params = {});

}  // namespace symdom
