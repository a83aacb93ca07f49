#include "gslep/spectral.hpp"

#include "gslep/csv.hpp"
#include "gslep/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace gslep {

std::string_view kind_name(LaplacianKind kind) {
  return kind == LaplacianKind::Combinatorial ? "combinatorial" : "normalized";
}

Eigen::Index dominant_entry_row(const Eigen::VectorXd &column) {
  double best = column.cwiseAbs().maxCoeff();
  // Entries that tie with the maximum up to roundoff count as the maximum,
  // otherwise the anchor row would flip with last-ulp noise on symmetric
  // eigenvectors.
  double floor = best - 1e-12 * best;
  for (Eigen::Index r = 0; r < column.size(); ++r)
    if (std::abs(column[r]) >= floor)
      return r;
  return 0;
}

void apply_sign_convention(Eigen::Ref<Eigen::MatrixXd> columns) {
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Eigen::Index best_row = dominant_entry_row(columns.col(c));
    if (columns(best_row, c) < 0.0)
      columns.col(c) = -columns.col(c);
  }
}

LaplacianSpectrum eig_laplacian(const Graph &graph, LaplacianKind kind,
                                int m) {
  const int n = graph.n_nodes();
  if (m < 1 || m > n)
    throw ValidationError("eigenpair count must be in 1.." +
                          std::to_string(n) + ", got " + std::to_string(m));
  if (!check_connected(graph))
    throw ValidationError("graph not connected");

  Eigen::MatrixXd l = laplacian(graph, kind);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");

  LaplacianSpectrum spectrum;
  spectrum.kind = kind;
  spectrum.n_nodes = n;
  spectrum.m_computed = m;
  spectrum.eigenvalues = solver.eigenvalues().head(m);
  spectrum.eigenvectors = solver.eigenvectors().leftCols(m);

  // The Laplacians here are positive semidefinite; roundoff can still push
  // the smallest eigenvalues slightly below zero.
  double scale = std::max(1.0, std::abs(spectrum.eigenvalues[m - 1]));
  double clamp_tol = 1e-10 * scale;
  for (int i = 0; i < m; ++i) {
    double &v = spectrum.eigenvalues[i];
    if (v < 0.0 && v >= -clamp_tol)
      v = 0.0;
  }
  apply_sign_convention(spectrum.eigenvectors);
  return spectrum;
}

Eigen::VectorXd gft_forward(const LaplacianSpectrum &spectrum,
                            const Eigen::VectorXd &signal) {
  if (signal.size() != spectrum.n_nodes)
    throw ValidationError("signal length " + std::to_string(signal.size()) +
                          " does not match node count " +
                          std::to_string(spectrum.n_nodes));
  return spectrum.eigenvectors.transpose() * signal;
}

Eigen::VectorXd gft_inverse(const LaplacianSpectrum &spectrum,
                            const Eigen::VectorXd &coefficients) {
  if (coefficients.size() != spectrum.m_computed)
    throw ValidationError("coefficient length " +
                          std::to_string(coefficients.size()) +
                          " does not match computed spectrum size " +
                          std::to_string(spectrum.m_computed));
  return spectrum.eigenvectors * coefficients;
}

Eigen::VectorXd fiedler_vector(const LaplacianSpectrum &spectrum) {
  double scale =
      std::max(1.0, spectrum.eigenvalues[spectrum.m_computed - 1]);
  double tol = 1e-8 * scale;
  for (int i = 0; i < spectrum.m_computed; ++i)
    if (spectrum.eigenvalues[i] >= tol)
      return spectrum.eigenvectors.col(i);
  throw ValidationError(
      "no eigenvalue above the zero tolerance in the computed spectrum");
}

void export_spectrum_csv(const LaplacianSpectrum &spectrum,
                         const std::filesystem::path &path) {
  std::string out;
  out += "# graph laplacian spectrum\n";
  out += "# kind=";
  out += kind_name(spectrum.kind);
  out += " n_nodes=" + std::to_string(spectrum.n_nodes) +
         " m=" + std::to_string(spectrum.m_computed) + "\n";
  out += "k,lambda\n";
  for (int i = 0; i < spectrum.m_computed; ++i)
    out += std::to_string(i + 1) + "," +
           format_g17(spectrum.eigenvalues[i]) + "\n";
  write_text_atomic(path, out);
}

void export_eigenvectors_csv(const LaplacianSpectrum &spectrum,
                             const std::filesystem::path &path) {
  std::string out;
  out += "# graph laplacian eigenvectors, one node per row\n";
  out += "# kind=";
  out += kind_name(spectrum.kind);
  out += " n_nodes=" + std::to_string(spectrum.n_nodes) +
         " m=" + std::to_string(spectrum.m_computed) + "\n";
  for (int r = 0; r < spectrum.n_nodes; ++r) {
    for (int c = 0; c < spectrum.m_computed; ++c) {
      if (c)
        out += ",";
      out += format_g17(spectrum.eigenvectors(r, c));
    }
    out += "\n";
  }
  write_text_atomic(path, out);
}

} // namespace gslep
