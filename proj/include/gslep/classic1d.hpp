#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <vector>

namespace gslep {

/// Unitary DFT with zero frequency centered: column l (0-based) carries
/// angular frequency 2*pi*(l + 1 - ceil((n-1)/2)) / n and entry k is
/// exp(j*omega_l*k) / sqrt(n).
Eigen::MatrixXcd dft_matrix(int n);

/// Angular frequency of column l of dft_matrix(n).
double dft_frequency(int n, int l);

/// The n_w column indices of smallest absolute frequency, ties broken in
/// favor of the negative frequency.
std::vector<int> band_indices(int n, int n_w);

/// Contiguous run of n_s sample indices centered at `center`; for even n_s
/// the extra sample falls on the right.
std::vector<int> centered_interval(int n, int n_s, int center);

/// Classic discrete Slepian problem: n signal samples, a band of the
/// band_count lowest absolute frequencies and a set of selected sample
/// indices (usually a contiguous interval, but any set is accepted).
struct DftDesign {
  DftDesign(int n_, int band_count_, std::vector<int> interval_);
  int n;
  int band_count;
  std::vector<int> interval;
};

/// Basis of the classic design, ordered by descending energy concentration
/// mu. Columns are phase normalized so the entry of largest magnitude is
/// real and positive, which makes the vectors real up to roundoff.
struct Slepian1dBasis {
  Eigen::MatrixXcd vectors;
  Eigen::MatrixXcd coefficient_vectors;
  Eigen::VectorXd mu;
  DftDesign design;

  /// Real parts of the basis vectors; throws if any imaginary residue
  /// exceeds the tolerance.
  Eigen::MatrixXd real_vectors(double imag_tol = 1e-8) const;
};

Slepian1dBasis slepian_1d(const DftDesign &design);

/// Write basis vectors as `sample,s_1..s_{n_w}` rows using real parts.
void export_basis_csv(const Slepian1dBasis &basis,
                      const std::filesystem::path &path);

/// Write `k,mu` rows, k 1-based in descending mu order.
void export_mu_csv(const Slepian1dBasis &basis,
                   const std::filesystem::path &path);

} // namespace gslep
