#include "uncert/speccore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace uncert::spectral {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

}  // namespace

SymmetricOperator SymmetricOperator::from_matrix(Eigen::MatrixXd m, double symmetry_tol) {
    if (m.rows() < 1 || m.rows() != m.cols())
        throw std::invalid_argument("SymmetricOperator: matrix must be square with dim >= 1");
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > symmetry_tol * std::max(scale, 1e-300))
        throw std::invalid_argument("SymmetricOperator: asymmetry " + fmt(asym) +
                                    " exceeds tolerance " + fmt(symmetry_tol * scale));
    return SymmetricOperator{std::move(m), symmetry_tol};
}

int SpectralDecomposition::kernel_dim(double kernel_tol) const {
    const double thr = kernel_tol * source_norm;
    int k = 0;
    for (int i = 0; i < dim(); ++i)
        if (std::abs(eigenvalues[i]) <= thr) ++k;
    return k;
}

Eigen::MatrixXd SpectralDecomposition::kernel_projector(double kernel_tol) const {
    const double thr = kernel_tol * source_norm;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
        if (std::abs(eigenvalues[i]) <= thr)
            p.noalias() += eigenvectors.col(i) * eigenvectors.col(i).transpose();
    return p;
}

double SpectralDecomposition::smallest_positive(double kernel_tol) const {
    const double thr = kernel_tol * source_norm;
    for (int i = 0; i < dim(); ++i)
        if (eigenvalues[i] > thr) return eigenvalues[i];
    throw std::domain_error("SpectralDecomposition: no eigenvalue above the kernel threshold");
}

SpectralDecomposition SpectralDecomposition::shifted(double b) const {
    SpectralDecomposition out;
    out.eigenvalues = eigenvalues.array() - b;
    out.eigenvectors = eigenvectors;
    out.source_norm = out.eigenvalues.size() ? out.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    return out;
}

Eigen::MatrixXd SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

SpectralDecomposition eigendecompose(const SymmetricOperator& a) {
    const int n = a.dim();
    // Symmetrize exactly so the solver sees a bitwise-symmetric input.
    Eigen::MatrixXd sym = 0.5 * (a.entries + a.entries.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success)
        throw eigensolver_error("eigendecompose: QL iteration failed to converge", 30 * n);

    SpectralDecomposition dec;
    dec.eigenvalues = solver.eigenvalues();
    dec.eigenvectors = solver.eigenvectors();
    dec.source_norm = dec.eigenvalues.cwiseAbs().maxCoeff();

    // Sign convention: first component above 1e-12 * max|column| positive.
    for (int j = 0; j < n; ++j) {
        auto col = dec.eigenvectors.col(j);
        const double thr = 1e-12 * col.cwiseAbs().maxCoeff();
        for (int i = 0; i < n; ++i) {
            if (std::abs(col[i]) > thr) {
                if (col[i] < 0.0) dec.eigenvectors.col(j) = -col;
                break;
            }
        }
    }

    const double ortho =
        (dec.eigenvectors.transpose() * dec.eigenvectors - Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (ortho > 1e-10)
        throw eigensolver_error("eigendecompose: eigenvector orthonormality defect " + fmt(ortho),
                                30 * n);
    const double recon = (dec.reconstruct() - sym).cwiseAbs().maxCoeff();
    if (recon > 1e-9 * std::max(1.0, dec.source_norm))
        throw eigensolver_error("eigendecompose: reconstruction defect " + fmt(recon), 30 * n);
    return dec;
}

SymmetricOperator spectral_projector(const SpectralDecomposition& dec, double lambda,
                                     double tie_tol) {
    const int n = dec.dim();
    const double cut = lambda - tie_tol * dec.source_norm;
    int count = 0;
    while (count < n && dec.eigenvalues[count] < cut) ++count;
    Eigen::MatrixXd p;
    if (count == 0) {
        p = Eigen::MatrixXd::Zero(n, n);
    } else {
        const auto block = dec.eigenvectors.leftCols(count);
        p.noalias() = block * block.transpose();
    }
    return SymmetricOperator{std::move(p), kDefaultSymmetryTol};
}

SymmetricOperator apply_function(const SpectralDecomposition& dec,
                                 const std::function<double(double)>& g) {
    const int n = dec.dim();
    Eigen::VectorXd vals(n);
    for (int i = 0; i < n; ++i) {
        vals[i] = g(dec.eigenvalues[i]);
        if (!std::isfinite(vals[i]))
            throw std::domain_error("apply_function: g is not finite at eigenvalue " +
                                    fmt(dec.eigenvalues[i]));
    }
    Eigen::MatrixXd out = dec.eigenvectors * vals.asDiagonal() * dec.eigenvectors.transpose();
    return SymmetricOperator{std::move(out), kDefaultSymmetryTol};
}

PseudoPowerResult pseudo_power(const SpectralDecomposition& dec, double gamma,
                               double kernel_tol) {
    const int n = dec.dim();
    const double thr = kernel_tol * dec.source_norm;
    if (dec.eigenvalues[0] < -thr)
        throw positivity_error("pseudo_power: eigenvalue " + fmt(dec.eigenvalues[0]) +
                               " below positivity threshold " + fmt(-thr));
    Eigen::VectorXd vals(n);
    int kdim = 0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(dec.eigenvalues[i]) <= thr) {
            vals[i] = 0.0;
            ++kdim;
        } else {
            vals[i] = std::pow(dec.eigenvalues[i], gamma);
        }
    }
    Eigen::MatrixXd out = dec.eigenvectors * vals.asDiagonal() * dec.eigenvectors.transpose();
    return PseudoPowerResult{SymmetricOperator{std::move(out), kDefaultSymmetryTol}, kdim};
}

CoupleNormValue norm_1_to_inf(const Eigen::MatrixXd& a) {
    return CoupleNormValue{a.size() ? a.cwiseAbs().maxCoeff() : 0.0, true};
}

CoupleNormValue norm_1_to_inf(const SymmetricOperator& a) { return norm_1_to_inf(a.entries); }

CoupleNormValue norm_inf_to_1(const Eigen::MatrixXd& a, int exact_cutoff) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return CoupleNormValue{0.0, true};
    if (n > exact_cutoff) return CoupleNormValue{a.cwiseAbs().sum(), false};

    // Gray-code walk over eps in {+-1}^n with eps_0 fixed to +1 (the norm is
    // even in eps). y = A * eps is updated one column flip at a time.
    Eigen::VectorXd eps = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd y = a.rowwise().sum();
    double best = y.cwiseAbs().sum();
    const std::uint64_t steps = (n > 1) ? (std::uint64_t{1} << (n - 1)) : 1;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < steps; ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const std::uint64_t changed = gray ^ next;
        gray = next;
        int bit = 0;
        while (!((changed >> bit) & 1u)) ++bit;
        const int j = bit + 1;  // eps_0 stays fixed
        y.noalias() -= 2.0 * eps[j] * a.col(j);
        eps[j] = -eps[j];
        best = std::max(best, y.cwiseAbs().sum());
    }
    return CoupleNormValue{best, true};
}

CoupleNormValue norm_inf_to_1(const SymmetricOperator& a, int exact_cutoff) {
    return norm_inf_to_1(a.entries, exact_cutoff);
}

double norm_1_to_2(const Eigen::MatrixXd& a) {
    return a.size() ? a.colwise().norm().maxCoeff() : 0.0;
}

double norm_1_to_2(const SymmetricOperator& a) { return norm_1_to_2(a.entries); }

double operator_norm_2(const Eigen::MatrixXd& a) {
    if (a.size() == 0) return 0.0;
    const Eigen::MatrixXd gram = a.transpose() * a;
    const int n = static_cast<int>(gram.rows());
    // Fixed starting vector; power iteration on the Gram matrix.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
    double lam = 0.0;
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXd w = gram * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        w /= norm;
        const double next = w.dot(gram * w);
        if (std::abs(next - lam) <= 1e-14 * std::max(1.0, next) && it > 3) {
            lam = next;
            break;
        }
        lam = next;
        v = w;
    }
    return std::sqrt(std::max(0.0, lam));
}

}  // namespace uncert::spectral
