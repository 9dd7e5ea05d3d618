// uncertainty.hpp - hypothesis certification and inequality verification for
// positive self-adjoint operator pairs (L, T) on a finite-dimensional space.
//
// Hypotheses, on the couple (l2, l1) or its regularized dual (l2, linf0):
//
//   ip0:  ||F_r||           <= Phi(r)          on an r-grid
//   ip2:  ||E_{1/t}|| Phi(eta t^delta) <= K^2  on a t-grid (K is measured)
//   ip1:  int_0^r s^{-2 gamma} Phi(s) ds/s <= M r^{-2 gamma} Phi(r)
//
// Local inequality:   ||E_{1/t} f|| <= C t^{-gamma delta} ||T^gamma f||,
//                     C = eta^{-gamma} (1 + K sqrt(1 + 2 gamma M))
// Global inequality:  ||f|| <= D_{alpha,beta} ||T^alpha f||^{beta/(alpha+beta)}
//                                  ||L^{beta delta} f||^{alpha/(alpha+beta)}
// Semigroup sandwich: e^{-1}||E_t f|| <= ||e^{-L/t} f||
//                       <= (e-1) sum_j e^{-j} ||E_{jt} f||.

#pragma once

#include "uncert/growth.hpp"
#include "uncert/speccore.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace uncert {

struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace verify {

enum class Restriction { full_space, complement_of_kernel_T, complement_of_kernel_L };
enum class CoupleOrientation { l2_l1, l2_linf0 };

std::string restriction_name(Restriction r);

// The pair (L, T); L is stored with the shift already applied
// (L_effective = L_input - shift_b I) and must be positive semidefinite to
// 1e-9 relative. restriction selects the subspace H0 of test vectors.
struct OperatorPair {
    spectral::SpectralDecomposition L;
    spectral::SpectralDecomposition T;
    double shift_b = 0.0;
    Restriction restriction = Restriction::full_space;

    int dim() const { return L.dim(); }

    static OperatorPair make(const spectral::SpectralDecomposition& L_input,
                             const spectral::SpectralDecomposition& T_input,
                             double shift_b = 0.0,
                             Restriction restriction = Restriction::full_space);
};

// Exchange the roles of L and T (restriction labels follow the operators).
OperatorPair swapped(const OperatorPair& pair);

// Orthogonal projector onto H0.
Eigen::MatrixXd restriction_projector(const OperatorPair& pair,
                                      double kernel_tol = spectral::kDefaultKernelTol);
// Orthonormal basis of H0 (columns).
Eigen::MatrixXd restriction_basis(const OperatorPair& pair,
                                  double kernel_tol = spectral::kDefaultKernelTol);

struct HypothesisBundle {
    growth::GrowthFunction phi;
    double eta = 1.0;
    double delta = 1.0;
    double gamma = 1.0;
    double interval_lo = 0.0;  // A = (lo, hi)
    double interval_hi = 0.0;
    double K = 0.0;            // measured: sup_t sqrt(||E_{1/t}|| Phi(eta t^delta))
    double M = 0.0;            // admissibility constant at alpha = 2 gamma on eta A^delta
    double hypothesis_margin = 0.0;
    double ip0_lo = 0.0, ip0_hi = 0.0;  // certified r-range
    CoupleOrientation couple = CoupleOrientation::l2_l1;
};

struct ReportRow {
    double t = 0.0;  // grid t for local rows; 0 for global/interpolation rows
    std::string vector_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double sharp_constant = 0.0;  // per-t sharp constant on local rows
};

struct InequalityReport {
    std::vector<ReportRow> rows;
    double paper_constant = 0.0;
    double sharp_constant = 0.0;
    bool all_pass = false;
    double hypothesis_margin = 0.0;
    bool counterexample = false;
    std::string counterexample_note;
};

inline constexpr double kRatioTol = 1e-9;

// Geometric grid with t_min = 0.5 / lambda_max(L), t_max = 2 / lambda+_min(L).
std::vector<double> spectral_t_grid(const spectral::SpectralDecomposition& L, int points = 40,
                                    double kernel_tol = spectral::kDefaultKernelTol);

HypothesisBundle verify_hypotheses(const OperatorPair& pair,
                                   const growth::GrowthFunction& phi, double eta,
                                   double delta, double gamma,
                                   std::pair<double, double> interval_A,
                                   const std::vector<double>& t_grid,
                                   const std::vector<double>& r_grid,
                                   CoupleOrientation couple = CoupleOrientation::l2_l1);

// eta^{-gamma} (1 + K sqrt(1 + 2 gamma M)).
double local_constant(double gamma, double eta, double K, double M);

struct TestVectorSet {
    Eigen::MatrixXd vectors;  // unit-norm columns lying in H0
    std::vector<std::string> ids;
};

// Full eigenbasis of L, full eigenbasis of T, and seeded gaussian vectors,
// all projected onto H0 and normalized (near-null projections dropped).
TestVectorSet make_test_vectors(const OperatorPair& pair, int random_count = 100,
                                std::uint64_t seed = 42);

InequalityReport verify_local(const OperatorPair& pair, const HypothesisBundle& bundle,
                              const std::vector<double>& t_grid,
                              const TestVectorSet& vectors);

struct GlobalConstants {
    double D_gamma_beta = 0.0;   // (1 + C) (gamma/beta)^{(beta-gamma)/(gamma+beta)}
    double K_alpha_gamma = 1.0;  // sharp moment-interpolation constant
    double D_alpha_beta = 0.0;
};
GlobalConstants global_constants(double alpha, double beta, double gamma, double delta,
                                 double C);

// ||T^gamma f|| <= K ||f||^{1-gamma/alpha} ||T^alpha f||^{gamma/alpha}.
InequalityReport verify_interpolation(const spectral::SpectralDecomposition& T, double alpha,
                                      double gamma, const TestVectorSet& vectors);

InequalityReport verify_global(const OperatorPair& pair, double alpha, double beta,
                               double gamma, double delta, double C,
                               const TestVectorSet& vectors);

struct SandwichResult {
    bool lower_ok = false;
    bool upper_ok = false;
    double tail_bound = 0.0;  // (e-1) e^{-J} / (1 - e^{-1}) ||f||
};
SandwichResult semigroup_sandwich(const spectral::SpectralDecomposition& L, double t,
                                  const Eigen::VectorXd& f, int truncation);

// C' = C (e-1) sum_{j>=1} e^{-j} j^{gamma delta}, truncation error < tol.
double exp_constant(double C, double gamma, double delta, double tol = 1e-12);

// Deterministic standard normal stream: Box-Muller over the portable
// mt19937_64 bit stream (std::normal_distribution is implementation-defined).
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}
    double next();
    Eigen::VectorXd vector(int dim);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace verify
}  // namespace uncert
