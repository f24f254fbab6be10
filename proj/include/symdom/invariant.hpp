#pragma once

// Norms and seminorms of the invariant spaces and the verification
// experiments built on them. Monte Carlo integrals use Lebesgue measure on
// real coordinates, with no 1/pi normalizations.

#include <functional>
#include <optional>

#include "symdom/fischer.hpp"
#include "symdom/series.hpp"

namespace symdom {

enum class Realization { Bounded, Siegel };

struct HolFunction {
    // Bounded realization: argument in Z coordinates. Siegel: (zeta, z) via eval_siegel.
    std::function<cd(const CVec&)> eval;
    std::function<cd(const SiegelPoint&)> eval_siegel;
    std::optional<SparsePolynomial> taylor;
};

HolFunction from_polynomial(const SparsePolynomial& p);
// F(p) = f(C^{-1} p) Delta((e - i z)/2)^{-lambda}: the Siegel picture of a bounded f.
HolFunction siegel_transport(const Domain& D, const HolFunction& f, double lambda);

// ---- Gram matrices and the Wallach set

enum class Verdict { PSD, NotPSD, Inconclusive };
const char* verdict_name(Verdict v);

struct PsdTolerances {
    double not_psd = 1e-8;  // NotPSD if min eig < -not_psd * |G|
    double psd = 1e-10;     // PSD if min eig >= -psd * |G|
};

struct GramReport {
    double lambda = 0.0;
    int n_points = 0;
    double min_eigenvalue = 0.0;
    double matrix_norm = 0.0;
    Verdict verdict = Verdict::PSD;
    long trial = -1;
    double ratio() const { return matrix_norm > 0 ? min_eigenvalue / matrix_norm : 0.0; }
};

CMat gram_matrix(const Domain& D, double lambda, const std::vector<CVec>& points);
CMat gram_matrix(const Domain& D, double lambda, const std::vector<SiegelPoint>& points);
GramReport psd_verdict(const CMat& G, double lambda, const PsdTolerances& tol = {});
GramReport psd_verdict(const Domain& D, double lambda, const std::vector<CVec>& points,
                       const PsdTolerances& tol = {});

struct WallachSearchOptions {
    int trials = 500;
    std::uint64_t seed = 1;
    Realization realization = Realization::Bounded;
    int max_points = 6;
    PsdTolerances tol;
    Exec exec = Exec::Parallel;
};

// Point configuration used by trial `index` (bounded realization).
std::vector<CVec> wallach_configuration(const Domain& D, std::uint64_t seed, long index, int max_points);
// Worst (smallest min-eigenvalue ratio) report over the trials.
GramReport wallach_search(const Domain& D, double lambda, const WallachSearchOptions& opt);

// ---- Fischer-series norms

struct SeriesValue {
    cd value;
    double last_shell;  // magnitude of the terms with |s| = truncation
    int truncation;
};

// sum over q(s, lambda) = 0 of <pi_s f, pi_s g>_F / (lambda)_s
SeriesValue h_lambda_inner(ProjectionCache& cache, const SparsePolynomial& f, const SparsePolynomial& g,
                           double lambda, int trunc);
// sqrt of sum over q(s, lambda) = q(lambda) of |pi_s f|_F^2 / (lambda)'_s
SeriesValue h_tilde_seminorm(ProjectionCache& cache, const SparsePolynomial& f, double lambda, int trunc);

struct DilationReport {
    std::vector<double> radii;
    std::vector<double> norms;
    bool monotone;
    double limit;  // norm of f itself
};
DilationReport dilation_monotonicity(ProjectionCache& cache, const SparsePolynomial& f, double lambda,
                                     const std::vector<double>& radii, int trunc);

// ---- Monte Carlo norms

struct McEstimate {
    double value;
    double std_error;
    long samples;
};

// Bounded: int_D |f|^2 h(z,z)^{lambda - g} dz. Siegel: int |F|^2 Delta^{lambda - g}(Im z - Phi) d(zeta, z)
// with F = f.eval_siegel.
McEstimate bergman_norm_mc(const Domain& D, const HolFunction& f, double lambda, Realization where,
                           long n_samples, std::uint64_t seed, Exec exec = Exec::Parallel,
                           const SiegelSamplerParams& params = {});
// Several functions on shared samples (common random numbers).
std::vector<McEstimate> bergman_norm_mc(const Domain& D, const std::vector<HolFunction>& fs, double lambda,
                                        Realization where, long n_samples, std::uint64_t seed,
                                        Exec exec = Exec::Parallel, const SiegelSamplerParams& params = {});

// Disc and balls: sup over radii of the normalized sphere mean of |f(r zeta)|^2.
// Tube domains: sup over h in {t e : t in radii} of int |f(x + i h)|^2 dx.
McEstimate hardy_norm_mc(const Domain& D, const HolFunction& f, long n_samples, const std::vector<double>& radii,
                         std::uint64_t seed, Exec exec = Exec::Parallel);
std::vector<double> default_hardy_radii();

// ---- Sup-norm spaces and atoms (Siegel realization)

// max over the grid of Delta^{lambda/2}(Im z - Phi(zeta)) |f(zeta, z)|
double sup_norm_max_space(const Domain& D, const HolFunction& f, double lambda, const std::vector<SiegelPoint>& grid);
std::vector<SiegelPoint> siegel_grid(const Domain& D, int n_points, std::uint64_t seed);
// U(m) f = (f o m^{-1}) |J m^{-1}|^{lambda/g}
HolFunction affine_transport(const Domain& D, const HolFunction& f, const AffineMap& m, double lambda);

struct Lattice {
    std::vector<SiegelPoint> points;
    double delta;
};
struct HalfPlaneRegion {
    double x_max = 4.0;
    double y_min = 0.05;
    double y_max = 20.0;
    int grid = 200;
};
double half_plane_distance(cd z, cd w);
// Greedy 2 delta-separated maximal subset of a candidate grid (rank one tube only).
Lattice lattice_generate(const Domain& D, double delta, const HalfPlaneRegion& region = {});
HolFunction atomic_synthesis(const Domain& D, const std::vector<cd>& coeffs, const Lattice& lattice, double lambda);

// ---- Disc: Bloch, Besov, Dirichlet

double bloch_seminorm_disc(const SparsePolynomial& f, int n_radii = 200, int n_angles = 256);
double besov1_norm_disc(const SparsePolynomial& f, int n_angles = 256);
// int_D |f'|^2 dA by polar quadrature
double dirichlet_integral_disc(const SparsePolynomial& f, int n_angles = 256);

// ---- Intertwining

// z -> (a z + b) / (c z + d) written for series work.
struct Mobius1 {
    cd a, b, c, d;
};
Mobius1 disc_map(const MobiusMap& phi);
Mobius1 disc_map_inverse(const MobiusMap& phi);
// Taylor series at z0 of (f o psi)(z0 + t) (psi')^{lambda/2}(z0 + t) to the given order.
Series1 disc_transform_series(const SparsePolynomial& f, const Mobius1& psi, double lambda, cd z0, int order);
// max over points of |D^{1-lambda}(U_lambda f) - U_{2-lambda}(D^{1-lambda} f)|, U_l f = (f o psi)(psi')^{l/2}
double intertwine_check_disc(const MobiusMap& phi, const SparsePolynomial& f, int lambda,
                             const std::vector<cd>& points);
// Same for the box operator on a tube domain and affine maps, k = m/r - lambda.
double intertwine_check_tube(const Domain& D, const SparsePolynomial& f, double lambda,
                             const std::vector<AffineMap>& maps, const std::vector<CVec>& points);
// Taylor coefficients at 0 of U_lambda(phi) f on the disc, up to `order`.
SparsePolynomial disc_transform_taylor(const MobiusMap& phi, const SparsePolynomial& f, double lambda, int order);

}  // namespace symdom
