#include "gslep/filtering.hpp"

#include "gslep/csv.hpp"
#include "gslep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gslep {

SpectralWindow::SpectralWindow(Kind kind, double parameter,
                               std::vector<std::pair<double, double>> points)
    : kind_(kind), parameter_(parameter), points_(std::move(points)) {}

SpectralWindow SpectralWindow::heat_kernel(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw ValidationError("heat kernel scale must be non-negative");
  return SpectralWindow(Kind::HeatKernel, t, {});
}

SpectralWindow SpectralWindow::ideal_lowpass(double cutoff) {
  if (!std::isfinite(cutoff))
    throw ValidationError("lowpass cutoff must be finite");
  return SpectralWindow(Kind::IdealLowPass, cutoff, {});
}

SpectralWindow
SpectralWindow::table(std::vector<std::pair<double, double>> points) {
  if (points.empty())
    throw ValidationError("window table is empty");
  std::sort(points.begin(), points.end());
  for (std::size_t k = 1; k < points.size(); ++k)
    if (points[k - 1].first == points[k].first)
      throw ValidationError("window table repeats x=" +
                            format_g17(points[k].first));
  return SpectralWindow(Kind::Table, 0.0, std::move(points));
}

SpectralWindow SpectralWindow::parse(const std::string &description) {
  auto colon = description.find(':');
  if (colon != std::string::npos) {
    std::string name = description.substr(0, colon);
    std::string arg = description.substr(colon + 1);
    if (name == "heat")
      return heat_kernel(parse_double(arg, "window 'heat'"));
    if (name == "lowpass")
      return ideal_lowpass(parse_double(arg, "window 'lowpass'"));
    if (name == "table") {
      auto lines = read_data_lines(arg);
      std::vector<std::pair<double, double>> points;
      for (const auto &[lineno, text] : lines) {
        const std::string context = arg + ":" + std::to_string(lineno);
        auto fields = split_fields(text);
        if (fields.size() != 2)
          throw ValidationError(context + ": expected 'x,gain'");
        points.emplace_back(parse_double(fields[0], context),
                            parse_double(fields[1], context));
      }
      return table(std::move(points));
    }
  }
  throw ValidationError("unknown window '" + description +
                        "', expected heat:<t>, lowpass:<cutoff> or "
                        "table:<path>");
}

double SpectralWindow::operator()(double x) const {
  switch (kind_) {
  case Kind::HeatKernel:
    return std::exp(-parameter_ * x);
  case Kind::IdealLowPass:
    return x <= parameter_ ? 1.0 : 0.0;
  case Kind::Table:
    break;
  }
  if (x <= points_.front().first)
    return points_.front().second;
  if (x >= points_.back().first)
    return points_.back().second;
  auto hi = std::upper_bound(
      points_.begin(), points_.end(), x,
      [](double v, const std::pair<double, double> &p) { return v < p.first; });
  auto lo = hi - 1;
  double t = (x - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

Eigen::VectorXd filter_laplacian(const LaplacianSpectrum &spectrum,
                                 const SpectralWindow &window,
                                 const Eigen::VectorXd &signal,
                                 bool passthrough) {
  if (signal.size() != spectrum.n_nodes)
    throw ValidationError("signal length " + std::to_string(signal.size()) +
                          " does not match node count " +
                          std::to_string(spectrum.n_nodes));
  Eigen::VectorXd coeff = spectrum.eigenvectors.transpose() * signal;
  Eigen::VectorXd shaped(coeff.size());
  for (Eigen::Index i = 0; i < coeff.size(); ++i)
    shaped[i] = window(spectrum.eigenvalues[i]) * coeff[i];
  Eigen::VectorXd out = spectrum.eigenvectors * shaped;
  if (passthrough)
    out += signal - spectrum.eigenvectors * coeff;
  return out;
}

Eigen::VectorXd filter_slepian(const SlepianBasis &basis,
                               const SpectralWindow &window,
                               const Eigen::VectorXd &signal,
                               bool allow_concentration_values) {
  if (basis.design == SlepianDesign::Concentration &&
      !allow_concentration_values)
    throw ValidationError(
        "concentration values are energy fractions, not distances; "
        "filtering on them must be explicitly allowed");
  if (signal.size() != basis.n_nodes)
    throw ValidationError("signal length " + std::to_string(signal.size()) +
                          " does not match node count " +
                          std::to_string(basis.n_nodes));
  Eigen::VectorXd coeff = basis.vectors.transpose() * signal;
  Eigen::VectorXd shaped(coeff.size());
  for (Eigen::Index i = 0; i < coeff.size(); ++i)
    shaped[i] = window(basis.values[i]) * coeff[i];
  return basis.vectors * shaped;
}

Eigen::VectorXd synth_eigvec_signal(const LaplacianSpectrum &spectrum, int k,
                                    int cycles) {
  if (k < 1 || k > spectrum.m_computed)
    throw ValidationError("eigenvector index must be in 1.." +
                          std::to_string(spectrum.m_computed) + ", got " +
                          std::to_string(k));
  if (cycles < 0)
    throw ValidationError("cycle count must be non-negative");
  Eigen::VectorXd v = spectrum.eigenvectors.col(k - 1);
  double lo = v.minCoeff();
  double hi = v.maxCoeff();
  // A constant eigenvector computed in floating point still spreads over a
  // few ulps, so compare the range against the entry magnitude.
  if (hi - lo <= 1e-12 * std::max(std::abs(lo), std::abs(hi)))
    throw ValidationError("eigenvector " + std::to_string(k) +
                          " is constant; its value range cannot carry a "
                          "sinusoid");
  // The eigenvector's value range is mapped affinely onto the sinusoid's
  // phase, so `cycles` full periods span the range.
  Eigen::VectorXd signal(spectrum.n_nodes);
  for (int i = 0; i < spectrum.n_nodes; ++i) {
    double phase =
        2.0 * std::numbers::pi * cycles * (v[i] - lo) / (hi - lo);
    signal[i] = std::sin(phase);
  }
  return signal;
}

Eigen::VectorXd load_signal_csv(const std::filesystem::path &path,
                                int n_nodes) {
  auto lines = read_data_lines(path);
  Eigen::VectorXd signal = Eigen::VectorXd::Zero(n_nodes);
  std::vector<char> seen(n_nodes, 0);
  int count = 0;
  for (const auto &[lineno, text] : lines) {
    const std::string context = path.string() + ":" + std::to_string(lineno);
    auto fields = split_fields(text);
    if (fields.size() == 2 && fields[0] == "node" && fields[1] == "value")
      continue;
    if (fields.size() != 2)
      throw ValidationError(context + ": expected 'node,value'");
    int node = parse_int(fields[0], context);
    double value = parse_double(fields[1], context);
    if (node < 0 || node >= n_nodes)
      throw ValidationError(context + ": node " + std::to_string(node) +
                            " is out of range for " +
                            std::to_string(n_nodes) + " nodes");
    if (seen[node])
      throw ValidationError(context + ": node " + std::to_string(node) +
                            " appears twice");
    seen[node] = 1;
    signal[node] = value;
    ++count;
  }
  if (count != n_nodes)
    throw ValidationError(path.string() + ": signal covers " +
                          std::to_string(count) + " of " +
                          std::to_string(n_nodes) + " nodes");
  return signal;
}

void export_signal_csv(const Eigen::VectorXd &signal,
                       const std::filesystem::path &path) {
  std::string out;
  out += "# node signal\n";
  out += "node,value\n";
  for (Eigen::Index i = 0; i < signal.size(); ++i)
    out += std::to_string(i) + "," + format_g17(signal[i]) + "\n";
  write_text_atomic(path, out);
}

} // namespace gslep
