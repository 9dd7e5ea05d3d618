// speccore.hpp - symmetric-matrix spectral engine.
//
// Eigendecomposition with a fixed sign convention, half-open spectral
// projectors E([0, lambda)), functional calculus g(A) = Q g(D) Q^T,
// Moore-Penrose pseudo-powers, and the mixed couple norms on a
// counting-measure space:
//
//   ||A||_{1->inf} = max_{i,j} |a_ij|
//   ||A||_{inf->1} = max over sign vectors eps of sum_i |sum_j a_ij eps_j|
//   ||A||_{1->2}   = max column euclidean norm
//
// The norms satisfy ||P||_{1->2}^2 = ||P^T P||_{1->inf} for any square P.

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace uncert {

struct eigensolver_error : std::runtime_error {
    int iterations;
    eigensolver_error(const std::string& what, int iters)
        : std::runtime_error(what), iterations(iters) {}
};

struct positivity_error : std::domain_error {
    using std::domain_error::domain_error;
};

namespace spectral {

inline constexpr double kDefaultSymmetryTol = 1e-10;
inline constexpr double kDefaultTieTol      = 1e-9;
inline constexpr double kDefaultKernelTol   = 1e-9;
inline constexpr int    kDefaultExactCutoff = 20;

// Dense real symmetric matrix. Construction through from_matrix validates
// symmetry relative to the largest entry.
struct SymmetricOperator {
    Eigen::MatrixXd entries;
    double symmetry_tol = kDefaultSymmetryTol;

    int dim() const { return static_cast<int>(entries.rows()); }

    static SymmetricOperator from_matrix(Eigen::MatrixXd m,
                                         double symmetry_tol = kDefaultSymmetryTol);
};

// Eigenvalues sorted nondecreasing, orthonormal eigenvector columns.
// Column signs follow the convention: first component with magnitude
// above 1e-12 * max|column| is positive.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    double source_norm = 0.0;

    int dim() const { return static_cast<int>(eigenvalues.size()); }

    // Indices with |lambda| <= kernel_tol * source_norm.
    int kernel_dim(double kernel_tol = kDefaultKernelTol) const;
    Eigen::MatrixXd kernel_projector(double kernel_tol = kDefaultKernelTol) const;
    // Smallest eigenvalue above the kernel threshold; throws if none.
    double smallest_positive(double kernel_tol = kDefaultKernelTol) const;

    // Decomposition of A - b I (same eigenvectors, shifted eigenvalues).
    SpectralDecomposition shifted(double b) const;

    Eigen::MatrixXd reconstruct() const;
};

struct CoupleNormValue {
    double value = 0.0;
    bool exact = true;
};

SpectralDecomposition eigendecompose(const SymmetricOperator& a);

// E([0, lambda)): sum of v v^T over eigenvalues with
// lambda_i < lambda - tie_tol * source_norm (ties excluded).
SymmetricOperator spectral_projector(const SpectralDecomposition& dec,
                                     double lambda,
                                     double tie_tol = kDefaultTieTol);

// Q diag(g(lambda)) Q^T; throws std::domain_error naming the eigenvalue
// when g is non-finite there.
SymmetricOperator apply_function(const SpectralDecomposition& dec,
                                 const std::function<double(double)>& g);

struct PseudoPowerResult {
    SymmetricOperator op;
    int kernel_dim = 0;
};

// lambda^gamma on the complement of the kernel, 0 on the kernel
// (Moore-Penrose convention). Eigenvalues below -kernel_tol*source_norm
// raise positivity_error.
PseudoPowerResult pseudo_power(const SpectralDecomposition& dec,
                               double gamma,
                               double kernel_tol = kDefaultKernelTol);

CoupleNormValue norm_1_to_inf(const Eigen::MatrixXd& a);
CoupleNormValue norm_1_to_inf(const SymmetricOperator& a);

// Exact sign-vector enumeration for dim <= exact_cutoff, otherwise the
// absolute entry sum (a valid upper bound, tight for nonnegative matrices).
CoupleNormValue norm_inf_to_1(const Eigen::MatrixXd& a,
                              int exact_cutoff = kDefaultExactCutoff);
CoupleNormValue norm_inf_to_1(const SymmetricOperator& a,
                              int exact_cutoff = kDefaultExactCutoff);

double norm_1_to_2(const Eigen::MatrixXd& a);
double norm_1_to_2(const SymmetricOperator& a);

// Largest singular value (2->2 norm), deterministic power iteration.
double operator_norm_2(const Eigen::MatrixXd& a);

}  // namespace spectral
}  // namespace uncert
