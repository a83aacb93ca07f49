#include "gslep/classic1d.hpp"

#include "gslep/csv.hpp"
#include "gslep/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

namespace gslep {

double dft_frequency(int n, int l) {
  int center = (n - 1 + 1) / 2; // ceil((n-1)/2)
  return 2.0 * std::numbers::pi * (l + 1 - center) / n;
}

Eigen::MatrixXcd dft_matrix(int n) {
  if (n < 2)
    throw ValidationError("dft length must be at least 2");
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int l = 0; l < n; ++l) {
    double omega = dft_frequency(n, l);
    for (int k = 0; k < n; ++k)
      f(k, l) = std::polar(scale, omega * k);
  }
  return f;
}

std::vector<int> band_indices(int n, int n_w) {
  if (n < 2)
    throw ValidationError("dft length must be at least 2");
  if (n_w < 1 || n_w > n)
    throw ValidationError("band size must be in 1.." + std::to_string(n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [n](int a, int b) {
    double wa = dft_frequency(n, a);
    double wb = dft_frequency(n, b);
    return std::pair(std::abs(wa), wa) < std::pair(std::abs(wb), wb);
  });
  order.resize(n_w);
  return order;
}

std::vector<int> centered_interval(int n, int n_s, int center) {
  if (n_s < 1 || n_s > n)
    throw ValidationError("interval size must be in 1.." + std::to_string(n));
  int start = center - (n_s - 1) / 2;
  if (start < 0 || start + n_s > n)
    throw ValidationError("interval of " + std::to_string(n_s) +
                          " samples centered at " + std::to_string(center) +
                          " leaves 0.." + std::to_string(n - 1));
  std::vector<int> samples(n_s);
  std::iota(samples.begin(), samples.end(), start);
  return samples;
}

DftDesign::DftDesign(int n_, int band_count_, std::vector<int> interval_)
    : n(n_), band_count(band_count_), interval(std::move(interval_)) {
  if (n < 2)
    throw ValidationError("dft length must be at least 2");
  if (band_count < 1 || band_count > n)
    throw ValidationError("band size must be in 1.." + std::to_string(n));
  if (interval.empty())
    throw ValidationError("sample set is empty");
  std::sort(interval.begin(), interval.end());
  for (std::size_t k = 0; k < interval.size(); ++k) {
    if (interval[k] < 0 || interval[k] >= n)
      throw ValidationError("sample index " + std::to_string(interval[k]) +
                            " is out of range for length " +
                            std::to_string(n));
    if (k > 0 && interval[k - 1] == interval[k])
      throw ValidationError("duplicate sample index " +
                            std::to_string(interval[k]));
  }
}

namespace {

// When consecutive concentrations sit closer together than the solver can
// resolve, the complex solver may return complex mixtures of the cluster's
// eigenvectors even though the cluster subspace admits a real basis. Recover
// a real orthonormal basis of each cluster's span and rotate it to
// diagonalize the concentration operator restricted to that span. Reported
// concentrations keep the solver's values; a cluster whose span has no real
// basis (an asymmetric band) is left untouched.
void realign_near_degenerate_clusters(Slepian1dBasis &basis,
                                      const Eigen::MatrixXcd &w) {
  const int n = basis.design.n;
  const int n_w = basis.design.band_count;
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(n);
  for (int s : basis.design.interval)
    mask[s] = 1.0;
  auto apply_operator = [&](const Eigen::MatrixXcd &x) {
    Eigen::MatrixXcd synth = w * (w.adjoint() * x);
    for (int r = 0; r < n; ++r)
      if (mask[r] == 0.0)
        synth.row(r).setZero();
    return (w * (w.adjoint() * synth)).eval();
  };

  const double gap_tol = 1e-7 * std::max(1.0, std::abs(basis.mu[0]));
  int a = 0;
  while (a < n_w) {
    int b = a + 1;
    while (b < n_w && std::abs(basis.mu[b - 1] - basis.mu[b]) < gap_tol)
      ++b;
    const int c = b - a;
    if (c >= 2) {
      Eigen::MatrixXd parts(n, 2 * c);
      parts.leftCols(c) = basis.vectors.middleCols(a, c).real();
      parts.rightCols(c) = basis.vectors.middleCols(a, c).imag();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(parts, Eigen::ComputeThinU);
      if (svd.singularValues()[c - 1] > 1e-6) {
        Eigen::MatrixXd q = svd.matrixU().leftCols(c);
        Eigen::MatrixXcd qc = q.cast<std::complex<double>>();
        Eigen::MatrixXd ritz = q.transpose() * apply_operator(qc).real();
        ritz = 0.5 * (ritz + ritz.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rotate(ritz);
        Eigen::MatrixXcd cand =
            (q * rotate.eigenvectors().rowwise().reverse())
                .cast<std::complex<double>>();
        Eigen::VectorXcd theta = rotate.eigenvalues()
                                     .reverse()
                                     .cast<std::complex<double>>();
        double residual = (apply_operator(cand) - cand * theta.asDiagonal())
                              .cwiseAbs()
                              .maxCoeff();
        if (residual <= 1e-7) {
          basis.vectors.middleCols(a, c) = cand;
          basis.coefficient_vectors.middleCols(a, c) = w.adjoint() * cand;
        }
      }
    }
    a = b;
  }
}

} // namespace

Slepian1dBasis slepian_1d(const DftDesign &design) {
  const int n_w = design.band_count;
  Eigen::MatrixXcd f = dft_matrix(design.n);
  std::vector<int> band = band_indices(design.n, n_w);
  Eigen::MatrixXcd w(design.n, n_w);
  for (int c = 0; c < n_w; ++c)
    w.col(c) = f.col(band[c]);

  Eigen::MatrixXcd rows(design.interval.size(), n_w);
  for (std::size_t r = 0; r < design.interval.size(); ++r)
    rows.row(r) = w.row(design.interval[r]);
  Eigen::MatrixXcd gram = rows.adjoint() * rows;
  // Force exact Hermitian symmetry before handing it to the solver.
  for (int i = 0; i < n_w; ++i) {
    gram(i, i) = gram(i, i).real();
    for (int j = 0; j < i; ++j)
      gram(j, i) = std::conj(gram(i, j));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");

  Slepian1dBasis basis{Eigen::MatrixXcd(), solver.eigenvectors(),
                       solver.eigenvalues(), design};
  basis.mu.reverseInPlace();
  basis.coefficient_vectors =
      basis.coefficient_vectors.rowwise().reverse().eval();
  // The smallest concentrations sit at roundoff scale, so only clear
  // negatives within a whisker of zero; genuine values stay untouched.
  for (Eigen::Index i = 0; i < basis.mu.size(); ++i)
    if (basis.mu[i] < 0.0 && basis.mu[i] >= -1e-14)
      basis.mu[i] = 0.0;

  basis.vectors = w * basis.coefficient_vectors;
  realign_near_degenerate_clusters(basis, w);
  for (int c = 0; c < n_w; ++c) {
    int best_row = 0;
    double best = basis.vectors.col(c).cwiseAbs().maxCoeff();
    double floor = best - 1e-12 * best;
    for (int r = 0; r < design.n; ++r) {
      if (std::abs(basis.vectors(r, c)) >= floor) {
        best_row = r;
        break;
      }
    }
    std::complex<double> z = basis.vectors(best_row, c);
    if (std::abs(z) > 0.0) {
      std::complex<double> phase = std::conj(z) / std::abs(z);
      basis.vectors.col(c) *= phase;
      basis.coefficient_vectors.col(c) *= phase;
    }
  }
  return basis;
}

Eigen::MatrixXd Slepian1dBasis::real_vectors(double imag_tol) const {
  double residue = vectors.imag().cwiseAbs().maxCoeff();
  if (residue > imag_tol)
    throw Error("imaginary residue " + format_g17(residue) +
                " exceeds tolerance " + format_g17(imag_tol));
  return vectors.real();
}

namespace {

std::string design_header(const DftDesign &design) {
  double shannon = static_cast<double>(design.band_count) *
                   static_cast<double>(design.interval.size()) /
                   static_cast<double>(design.n);
  return "# n=" + std::to_string(design.n) +
         " n_s=" + std::to_string(design.interval.size()) +
         " n_w=" + std::to_string(design.band_count) +
         " shannon=" + format_g17(shannon) + "\n";
}

} // namespace

void export_basis_csv(const Slepian1dBasis &basis,
                      const std::filesystem::path &path) {
  Eigen::MatrixXd real = basis.real_vectors();
  std::string out;
  out += "# classic dft slepian basis, one sample per row\n";
  out += design_header(basis.design);
  out += "sample";
  for (int k = 0; k < basis.design.band_count; ++k)
    out += ",s_" + std::to_string(k + 1);
  out += "\n";
  for (int r = 0; r < basis.design.n; ++r) {
    out += std::to_string(r);
    for (int k = 0; k < basis.design.band_count; ++k)
      out += "," + format_g17(real(r, k));
    out += "\n";
  }
  write_text_atomic(path, out);
}

void export_mu_csv(const Slepian1dBasis &basis,
                   const std::filesystem::path &path) {
  std::string out;
  out += "# classic dft slepian concentrations\n";
  out += design_header(basis.design);
  out += "k,mu\n";
  for (Eigen::Index i = 0; i < basis.mu.size(); ++i)
    out += std::to_string(i + 1) + "," + format_g17(basis.mu[i]) + "\n";
  write_text_atomic(path, out);
}

} // namespace gslep
