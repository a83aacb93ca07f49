#pragma once

#include "gslep/graph.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <string_view>

namespace gslep {

std::string_view kind_name(LaplacianKind kind);

/// Partial eigendecomposition of a graph Laplacian. Eigenvalues are sorted
/// ascending and eigenvector columns are orthonormal. Column c holds the
/// eigenvector of eigenvalues[c]; the sign convention makes the entry of
/// largest magnitude positive (smallest node index on ties).
struct LaplacianSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  LaplacianKind kind;
  int n_nodes = 0;
  int m_computed = 0;
};

/// Compute the m smallest eigenpairs of the chosen Laplacian. The graph must
/// be connected and 1 <= m <= n_nodes. Tiny negative eigenvalues produced by
/// roundoff are clamped to zero.
LaplacianSpectrum eig_laplacian(const Graph &graph, LaplacianKind kind, int m);

/// Graph Fourier transform of a node signal: coefficients U^T x.
Eigen::VectorXd gft_forward(const LaplacianSpectrum &spectrum,
                            const Eigen::VectorXd &signal);

/// Inverse transform: synthesize U c from spectral coefficients.
Eigen::VectorXd gft_inverse(const LaplacianSpectrum &spectrum,
                            const Eigen::VectorXd &coefficients);

/// Eigenvector of the smallest eigenvalue that exceeds the zero tolerance
/// 1e-8 * max(1, largest computed eigenvalue).
Eigen::VectorXd fiedler_vector(const LaplacianSpectrum &spectrum);

/// Row of the entry with the largest magnitude. Magnitudes within a relative
/// 1e-12 of the maximum count as ties, resolved by the smallest row index.
Eigen::Index dominant_entry_row(const Eigen::VectorXd &column);

/// Flip column signs in place so each column's dominant entry is positive.
void apply_sign_convention(Eigen::Ref<Eigen::MatrixXd> columns);

/// Write `k,lambda` rows (k is 1-based) with a parameter echo in leading
/// comment lines.
void export_spectrum_csv(const LaplacianSpectrum &spectrum,
                         const std::filesystem::path &path);

/// Write the eigenvector matrix as n_nodes rows by m_computed columns.
void export_eigenvectors_csv(const LaplacianSpectrum &spectrum,
                             const std::filesystem::path &path);

} // namespace gslep
