#pragma once

#include "gslep/slepian.hpp"
#include "gslep/spectral.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gslep {

/// Scalar gain curve evaluated on eigenvalues or Slepian values.
class SpectralWindow {
public:
  enum class Kind { HeatKernel, IdealLowPass, Table };

  /// exp(-t * x) with t >= 0.
  static SpectralWindow heat_kernel(double t);

  /// 1 for x <= cutoff, else 0.
  static SpectralWindow ideal_lowpass(double cutoff);

  /// Piecewise linear interpolation through (x, gain) points; x values must
  /// be distinct. Outside the covered range the nearest gain is held.
  static SpectralWindow table(std::vector<std::pair<double, double>> points);

  /// Parse a window description: `heat:<t>`, `lowpass:<cutoff>` or
  /// `table:<path>` where the file holds `x,gain` lines.
  static SpectralWindow parse(const std::string &description);

  double operator()(double x) const;
  Kind kind() const { return kind_; }

private:
  SpectralWindow(Kind kind, double parameter,
                 std::vector<std::pair<double, double>> points);

  Kind kind_;
  double parameter_;
  std::vector<std::pair<double, double>> points_;
};

/// Shape the signal in the Laplacian eigenbasis: coefficients are scaled by
/// window(lambda) and synthesized back. With `passthrough` the component
/// orthogonal to the computed eigenvectors is kept unchanged instead of
/// being dropped.
Eigen::VectorXd filter_laplacian(const LaplacianSpectrum &spectrum,
                                 const SpectralWindow &window,
                                 const Eigen::VectorXd &signal,
                                 bool passthrough = false);

/// Shape the signal in a Slepian basis, scaling each component by
/// window(value). Concentration values measure energy fractions rather than
/// distances, so filtering on them must be requested explicitly.
Eigen::VectorXd filter_slepian(const SlepianBasis &basis,
                               const SpectralWindow &window,
                               const Eigen::VectorXd &signal,
                               bool allow_concentration_values = false);

/// Test signal sin(2*pi*cycles*t_i) where t_i maps the values of
/// eigenvector k (1-based) affinely onto [0, 1]. The eigenvector must not be
/// constant.
Eigen::VectorXd synth_eigvec_signal(const LaplacianSpectrum &spectrum, int k,
                                    int cycles);

/// Read a `node,value` signal file covering every node exactly once.
Eigen::VectorXd load_signal_csv(const std::filesystem::path &path,
                                int n_nodes);

/// Write `node,value` rows.
void export_signal_csv(const Eigen::VectorXd &signal,
                       const std::filesystem::path &path);

} // namespace gslep
