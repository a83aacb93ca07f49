#pragma once

#include "gslep/spectral.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <string_view>
#include <vector>

namespace gslep {

/// Spectral band limit: the basis is built from the n_w lowest Laplacian
/// eigenvectors.
struct BandLimit {
  explicit BandLimit(int n_w_);
  int n_w;
};

/// Sorted set of distinct node indices describing the selected region.
class NodeSubset {
public:
  explicit NodeSubset(std::vector<int> indices);

  const std::vector<int> &indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool contains(int node) const;

private:
  std::vector<int> indices_;
};

/// Read node indices (whitespace or newline separated, '#' comments allowed)
/// into a subset.
NodeSubset load_node_subset(const std::filesystem::path &path);

enum class SlepianDesign { Concentration, Embedding };

std::string_view design_name(SlepianDesign design);

/// Symmetric n_w x n_w matrix whose eigenvectors give the Slepian
/// coefficients, together with the spectrum it was compressed from. For the
/// concentration design the eigenvalues are in-region energy fractions; for
/// the embedding design they are modified embedded distances.
struct ConcentrationMatrix {
  Eigen::MatrixXd entries;
  SlepianDesign design;
  BandLimit bandwidth;
  NodeSubset subset;
  LaplacianSpectrum spectrum;
};

/// Region-limiting operator expressed in the band: C = W^T U^T S U W where U
/// holds the Laplacian eigenvectors, W selects the n_w lowest and S selects
/// the subset rows.
ConcentrationMatrix concentration_matrix(const LaplacianSpectrum &spectrum,
                                         const BandLimit &bandwidth,
                                         const NodeSubset &subset);

/// Embedding variant: C scaled on both sides by the square roots of the
/// corresponding Laplacian eigenvalues.
ConcentrationMatrix
embedding_concentration_matrix(const LaplacianSpectrum &spectrum,
                               const BandLimit &bandwidth,
                               const NodeSubset &subset);

/// Laplacian quadratic form, in-region energy and embedding quadratic form
/// of one vector.
struct CrossMetrics {
  double lambda_metric;
  double mu_metric;
  double xi_metric;
};

/// Orthonormal Slepian basis. Column k of `vectors` is the node-domain basis
/// vector for values[k]; `coefficient_vectors` holds the same basis in the
/// band, so vectors = U W coefficient_vectors. Concentration bases are sorted
/// by descending energy fraction, embedding bases by ascending modified
/// embedded distance.
struct SlepianBasis {
  Eigen::MatrixXd vectors;
  Eigen::MatrixXd coefficient_vectors;
  Eigen::VectorXd values;
  std::vector<CrossMetrics> cross_metrics;
  SlepianDesign design;
  LaplacianKind kind;
  int n_nodes = 0;
  BandLimit bandwidth;
  NodeSubset subset;
};

SlepianBasis slepian_concentration(const ConcentrationMatrix &matrix);

SlepianBasis slepian_embedding(const ConcentrationMatrix &matrix);

/// Shannon number K = n_w * n_s / n, the expected count of well concentrated
/// basis vectors.
double shannon_number(int n_w, int n_s, int n);

/// Metrics of an arbitrary unit-norm signal against a subset, taking the
/// spectrum's computed eigenpairs as the band.
CrossMetrics cross_metrics(const LaplacianSpectrum &spectrum,
                           const NodeSubset &subset,
                           const Eigen::VectorXd &signal);

/// Row order used when exporting a basis: the design's native order, or
/// re-sorted by value.
enum class PresentationOrder { Canonical, Ascending, Descending };

/// Write basis vectors as `node,s_1..s_{n_w}` rows.
void export_basis_csv(const SlepianBasis &basis,
                      const std::filesystem::path &path,
                      PresentationOrder order = PresentationOrder::Canonical);

/// Write `k,value,lambda_metric,mu_metric,xi_metric` rows (k is 1-based and
/// follows the presentation order).
void export_metrics_csv(const SlepianBasis &basis,
                        const std::filesystem::path &path,
                        PresentationOrder order = PresentationOrder::Canonical);

} // namespace gslep
