#pragma once

// Euclidean Jordan algebras of the four implemented families.
//
// Elements are coordinate vectors in a basis that is orthonormal for the
// trace form tau(x o y). Matrix families use upper-triangle packing with
// off-diagonal units scaled by 1/sqrt(2); the spin factor uses
// (x, y, sqrt(2) z_1, ..., sqrt(2) z_{m-2}). Complexified elements are
// complex coordinate vectors in the same (real) basis, so conjugation is
// coordinatewise.

#include <vector>

#include "symdom/types.hpp"

namespace symdom {

enum class Family { SymReal, HermComplex, HermQuaternion, SpinFactor };

const char* family_name(Family f);

struct FamilySpec {
    Family family = Family::SymReal;
    int size = 1;  // rank for matrix families, m for the spin factor
    int cols = 0;  // HermComplex only: q >= size (0 means q = size)
};

struct AlgebraDescriptor {
    Family family;
    int rank;
    int peirce_a;
    int dim_m;              // real dimension of the Jordan algebra
    double genus_g;
    int siegel_n;           // complex dimension of the half Peirce space
    int size;
    int cols;
    double trace_form_ratio;  // tr D(x,y) = ratio * tau(x o conj y)
};

class Algebra {
public:
    explicit Algebra(FamilySpec spec);

    const AlgebraDescriptor& desc() const { return d_; }
    Family family() const { return d_.family; }
    int dim() const { return d_.dim_m; }
    int rank() const { return d_.rank; }
    bool is_matrix() const { return d_.family != Family::SpinFactor; }
    // Side of the complex matrix carrying the embedding (2r for quaternions).
    int mat_size() const;
    // Eigenvalue multiplicity of the embedding (2 for quaternions, else 1).
    int multiplicity() const { return d_.family == Family::HermQuaternion ? 2 : 1; }

    // Matrix families only. embed is C-linear, unembed is the trace-form projection.
    CMat embed(const CVec& x) const;
    CVec unembed(const CMat& X) const;
    const std::vector<CMat>& basis() const { return basis_; }

    bool same_as(const Algebra& o) const;

private:
    AlgebraDescriptor d_;
    std::vector<CMat> basis_;
};

Algebra make_algebra(FamilySpec spec);

Vec jordan_product(const Algebra& A, const Vec& x, const Vec& y);
CVec jordan_product(const Algebra& A, const CVec& x, const CVec& y);
Vec identity(const Algebra& A);
double trace(const Algebra& A, const Vec& x);
cd trace(const Algebra& A, const CVec& x);
double trace_inner(const Algebra& A, const Vec& x, const Vec& y);

struct SpectralDecomposition {
    Vec eigenvalues;          // non-increasing
    std::vector<Vec> frame;   // primitive idempotents, same order
};

SpectralDecomposition spectral_decomposition(const Algebra& A, const Vec& x);
double determinant(const Algebra& A, const Vec& x);
Vec inverse(const Algebra& A, const Vec& x, double tol = 1e-10);
CVec inverse(const Algebra& A, const CVec& x, double tol = 1e-10);
// Spectral calculus: sum f(lambda_i) c_i.
Vec spectral_apply(const Algebra& A, const Vec& x, double (*f)(double));
// Quadratic representation P(a) b = 2 a o (a o b) - (a o a) o b.
Vec quadratic_rep(const Algebra& A, const Vec& a, const Vec& b);

// {x,y,z} = x(conj(y) z) - (x z) conj(y) + z(conj(y) x)
CVec triple_product(const Algebra& A, const CVec& x, const CVec& y, const CVec& z);

struct PeirceProjectors {
    Mat p0, p_half, p1;
};
PeirceProjectors peirce_projectors(const Algebra& A, const Vec& c, double tol = 1e-8);
// Matrix of z -> {a, b, z} on complex coordinates.
CMat box_operator_matrix(const Algebra& A, const CVec& a, const CVec& b);

std::vector<Vec> standard_frame(const Algebra& A);

// Element constructors from natural entries.
Vec element_from_matrix(const Algebra& A, const CMat& hermitian);  // matrix families
Vec spin_element(const Algebra& A, double x, double y, const Vec& z);
CVec spin_element(const Algebra& A, cd x, cd y, const CVec& z);
// a + b i + c j + d k  ->  [[a + i d, b + i c], [-b + i c, a - i d]], entrywise.
CMat quaternion_embed(const Mat& a, const Mat& b, const Mat& c, const Mat& d);
// Block-diagonal J with J conj(E(q)) J^{-1} = E(q).
CMat quaternion_j(int r);

}  // namespace symdom
