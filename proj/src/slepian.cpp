#include "gslep/slepian.hpp"

#include "gslep/csv.hpp"
#include "gslep/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace gslep {

BandLimit::BandLimit(int n_w_) : n_w(n_w_) {
  if (n_w < 1)
    throw ValidationError("bandwidth must be at least 1, got " +
                          std::to_string(n_w));
}

NodeSubset::NodeSubset(std::vector<int> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty())
    throw ValidationError("node subset is empty");
  for (int v : indices_)
    if (v < 0)
      throw ValidationError("negative node index " + std::to_string(v) +
                            " in subset");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t k = 1; k < indices_.size(); ++k)
    if (indices_[k - 1] == indices_[k])
      throw ValidationError("duplicate node " + std::to_string(indices_[k]) +
                            " in subset");
}

bool NodeSubset::contains(int node) const {
  return std::binary_search(indices_.begin(), indices_.end(), node);
}

NodeSubset load_node_subset(const std::filesystem::path &path) {
  auto lines = read_data_lines(path);
  std::vector<int> indices;
  for (const auto &[lineno, text] : lines) {
    const std::string context = path.string() + ":" + std::to_string(lineno);
    for (const auto &tok : split_fields(text))
      indices.push_back(parse_int(tok, context));
  }
  if (indices.empty())
    throw ValidationError(path.string() + ": subset file has no indices");
  return NodeSubset(std::move(indices));
}

std::string_view design_name(SlepianDesign design) {
  return design == SlepianDesign::Concentration ? "concentration"
                                                : "embedding";
}

namespace {

void check_band_and_subset(const LaplacianSpectrum &spectrum,
                           const BandLimit &bandwidth,
                           const NodeSubset &subset) {
  if (bandwidth.n_w > spectrum.m_computed)
    throw ValidationError("bandwidth " + std::to_string(bandwidth.n_w) +
                          " exceeds the computed spectrum size " +
                          std::to_string(spectrum.m_computed));
  int max_node = subset.indices().back();
  if (max_node >= spectrum.n_nodes)
    throw ValidationError("subset node " + std::to_string(max_node) +
                          " is out of range for " +
                          std::to_string(spectrum.n_nodes) + " nodes");
}

// C = B^T B for the subset rows B of the band. Computed on the lower
// triangle and mirrored so the result is symmetric to the last bit.
Eigen::MatrixXd subset_gram(const LaplacianSpectrum &spectrum, int n_w,
                            const NodeSubset &subset) {
  Eigen::MatrixXd rows(subset.size(), n_w);
  for (int r = 0; r < subset.size(); ++r)
    rows.row(r) = spectrum.eigenvectors.row(subset.indices()[r]).head(n_w);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_w, n_w);
  c.selfadjointView<Eigen::Lower>().rankUpdate(rows.transpose());
  c.triangularView<Eigen::StrictlyUpper>() =
      c.transpose().triangularView<Eigen::StrictlyUpper>();
  return c;
}

Eigen::VectorXd sqrt_eigenvalues(const LaplacianSpectrum &spectrum, int n_w) {
  Eigen::VectorXd s(n_w);
  for (int i = 0; i < n_w; ++i)
    s[i] = std::sqrt(std::max(spectrum.eigenvalues[i], 0.0));
  return s;
}

Eigen::MatrixXd scale_symmetric(const Eigen::MatrixXd &c,
                                const Eigen::VectorXd &scale) {
  const int n = static_cast<int>(c.rows());
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = scale[i] * c(i, j) * scale[j];
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

void clamp_interval(Eigen::VectorXd &values, bool cap_at_one) {
  double top = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  double tol = 1e-12 * std::max(1.0, top);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0 && values[i] >= -tol)
      values[i] = 0.0;
    if (cap_at_one && values[i] > 1.0 && values[i] <= 1.0 + tol)
      values[i] = 1.0;
  }
}

SlepianBasis build_basis(const ConcentrationMatrix &matrix,
                         SlepianDesign expected) {
  if (matrix.design != expected)
    throw ValidationError(std::string("expected a ") +
                          std::string(design_name(expected)) +
                          " matrix, got " +
                          std::string(design_name(matrix.design)));
  const LaplacianSpectrum &spectrum = matrix.spectrum;
  check_band_and_subset(spectrum, matrix.bandwidth, matrix.subset);
  const int n_w = matrix.bandwidth.n_w;
  if (matrix.entries.rows() != n_w || matrix.entries.cols() != n_w)
    throw ValidationError("concentration matrix size does not match the "
                          "bandwidth");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix.entries);
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");

  SlepianBasis basis{Eigen::MatrixXd(),
                     solver.eigenvectors(),
                     solver.eigenvalues(),
                     {},
                     expected,
                     spectrum.kind,
                     spectrum.n_nodes,
                     matrix.bandwidth,
                     matrix.subset};

  // Concentration bases put the best-concentrated vector first; embedding
  // bases keep the solver's ascending order.
  if (expected == SlepianDesign::Concentration) {
    basis.values.reverseInPlace();
    basis.coefficient_vectors =
        basis.coefficient_vectors.rowwise().reverse().eval();
  }
  clamp_interval(basis.values, expected == SlepianDesign::Concentration);

  basis.vectors =
      spectrum.eigenvectors.leftCols(n_w) * basis.coefficient_vectors;
  for (int c = 0; c < n_w; ++c) {
    Eigen::Index best_row = dominant_entry_row(basis.vectors.col(c));
    if (basis.vectors(best_row, c) < 0.0) {
      basis.vectors.col(c) = -basis.vectors.col(c);
      basis.coefficient_vectors.col(c) = -basis.coefficient_vectors.col(c);
    }
  }

  Eigen::MatrixXd embedding_entries =
      expected == SlepianDesign::Embedding
          ? matrix.entries
          : scale_symmetric(matrix.entries,
                            sqrt_eigenvalues(spectrum, n_w));
  basis.cross_metrics.resize(n_w);
  for (int k = 0; k < n_w; ++k) {
    const auto coeff = basis.coefficient_vectors.col(k);
    double lam = 0.0;
    for (int a = 0; a < n_w; ++a)
      lam += spectrum.eigenvalues[a] * coeff[a] * coeff[a];
    double mu = 0.0;
    for (int node : basis.subset.indices())
      mu += basis.vectors(node, k) * basis.vectors(node, k);
    double xi = coeff.dot(embedding_entries * coeff);
    basis.cross_metrics[k] = {lam, mu, xi};
  }
  return basis;
}

std::vector<int> presentation_permutation(const SlepianBasis &basis,
                                          PresentationOrder order) {
  std::vector<int> perm(basis.bandwidth.n_w);
  std::iota(perm.begin(), perm.end(), 0);
  if (order == PresentationOrder::Ascending)
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
      return basis.values[a] < basis.values[b];
    });
  else if (order == PresentationOrder::Descending)
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
      return basis.values[a] > basis.values[b];
    });
  return perm;
}

std::string basis_header(const SlepianBasis &basis, PresentationOrder order) {
  double k_number = shannon_number(basis.bandwidth.n_w, basis.subset.size(),
                                   basis.n_nodes);
  std::string head;
  head += "# design=";
  head += design_name(basis.design);
  head += " laplacian=";
  head += kind_name(basis.kind);
  head += " n_nodes=" + std::to_string(basis.n_nodes) +
          " n_s=" + std::to_string(basis.subset.size()) +
          " n_w=" + std::to_string(basis.bandwidth.n_w) +
          " shannon=" + format_g17(k_number);
  head += " order=";
  head += order == PresentationOrder::Canonical    ? "canonical"
          : order == PresentationOrder::Ascending  ? "asc"
                                                   : "desc";
  head += "\n";
  return head;
}

} // namespace

ConcentrationMatrix concentration_matrix(const LaplacianSpectrum &spectrum,
                                         const BandLimit &bandwidth,
                                         const NodeSubset &subset) {
  check_band_and_subset(spectrum, bandwidth, subset);
  return {subset_gram(spectrum, bandwidth.n_w, subset),
          SlepianDesign::Concentration, bandwidth, subset, spectrum};
}

ConcentrationMatrix
embedding_concentration_matrix(const LaplacianSpectrum &spectrum,
                               const BandLimit &bandwidth,
                               const NodeSubset &subset) {
  check_band_and_subset(spectrum, bandwidth, subset);
  Eigen::MatrixXd c = subset_gram(spectrum, bandwidth.n_w, subset);
  return {scale_symmetric(c, sqrt_eigenvalues(spectrum, bandwidth.n_w)),
          SlepianDesign::Embedding, bandwidth, subset, spectrum};
}

SlepianBasis slepian_concentration(const ConcentrationMatrix &matrix) {
  return build_basis(matrix, SlepianDesign::Concentration);
}

SlepianBasis slepian_embedding(const ConcentrationMatrix &matrix) {
  return build_basis(matrix, SlepianDesign::Embedding);
}

double shannon_number(int n_w, int n_s, int n) {
  if (n < 1)
    throw ValidationError("node count must be positive");
  if (n_w < 1 || n_w > n)
    throw ValidationError("bandwidth must be in 1.." + std::to_string(n));
  if (n_s < 1 || n_s > n)
    throw ValidationError("subset size must be in 1.." + std::to_string(n));
  return static_cast<double>(n_w) * static_cast<double>(n_s) /
         static_cast<double>(n);
}

CrossMetrics cross_metrics(const LaplacianSpectrum &spectrum,
                           const NodeSubset &subset,
                           const Eigen::VectorXd &signal) {
  BandLimit band(spectrum.m_computed);
  check_band_and_subset(spectrum, band, subset);
  if (signal.size() != spectrum.n_nodes)
    throw ValidationError("signal length " + std::to_string(signal.size()) +
                          " does not match node count " +
                          std::to_string(spectrum.n_nodes));
  double norm = signal.norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw ValidationError("signal must have unit norm, got " +
                          format_g17(norm));

  Eigen::VectorXd coeff = spectrum.eigenvectors.transpose() * signal;
  double lam = 0.0;
  for (int a = 0; a < spectrum.m_computed; ++a)
    lam += spectrum.eigenvalues[a] * coeff[a] * coeff[a];
  double mu = 0.0;
  for (int node : subset.indices())
    mu += signal[node] * signal[node];
  Eigen::MatrixXd emb =
      embedding_concentration_matrix(spectrum, band, subset).entries;
  double xi = coeff.dot(emb * coeff);
  return {lam, mu, xi};
}

void export_basis_csv(const SlepianBasis &basis,
                      const std::filesystem::path &path,
                      PresentationOrder order) {
  auto perm = presentation_permutation(basis, order);
  std::string out;
  out += "# slepian basis vectors, one node per row\n";
  out += basis_header(basis, order);
  out += "node";
  for (int k = 0; k < basis.bandwidth.n_w; ++k)
    out += ",s_" + std::to_string(k + 1);
  out += "\n";
  for (int node = 0; node < basis.n_nodes; ++node) {
    out += std::to_string(node);
    for (int k = 0; k < basis.bandwidth.n_w; ++k)
      out += "," + format_g17(basis.vectors(node, perm[k]));
    out += "\n";
  }
  write_text_atomic(path, out);
}

void export_metrics_csv(const SlepianBasis &basis,
                        const std::filesystem::path &path,
                        PresentationOrder order) {
  auto perm = presentation_permutation(basis, order);
  std::string out;
  out += "# slepian basis values and cross metrics\n";
  out += basis_header(basis, order);
  out += "k,value,lambda_metric,mu_metric,xi_metric\n";
  for (int k = 0; k < basis.bandwidth.n_w; ++k) {
    const CrossMetrics &m = basis.cross_metrics[perm[k]];
    out += std::to_string(k + 1) + "," + format_g17(basis.values[perm[k]]) +
           "," + format_g17(m.lambda_metric) + "," +
           format_g17(m.mu_metric) + "," + format_g17(m.xi_metric) + "\n";
  }
  write_text_atomic(path, out);
}

} // namespace gslep
