#include "gslep/classic1d.hpp"
#include "gslep/csv.hpp"
#include "gslep/errors.hpp"
#include "gslep/filtering.hpp"
#include "gslep/graph.hpp"
#include "gslep/slepian.hpp"
#include "gslep/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>

namespace {

struct GraphOptions {
  std::string graph_path;
  bool mesh_off = false;
  int nodes_override = 0;
  std::string laplacian = "norm";
};

void add_graph_options(CLI::App *cmd, GraphOptions &opts) {
  cmd->add_option("--graph", opts.graph_path,
                  "Edge list file, or an OFF mesh with --mesh-off")
      ->required();
  cmd->add_flag("--mesh-off", opts.mesh_off,
                "Treat --graph as a triangle mesh in OFF format");
  cmd->add_option("--nodes", opts.nodes_override,
                  "Total node count when it exceeds max edge index + 1");
  cmd->add_option("--laplacian", opts.laplacian, "Laplacian kind")
      ->check(CLI::IsMember({"comb", "norm"}))
      ->default_val("norm");
}

gslep::Graph load_graph(const GraphOptions &opts) {
  if (opts.mesh_off) {
    if (opts.nodes_override)
      throw gslep::ValidationError("--nodes does not apply to OFF meshes");
    return gslep::load_mesh_off(opts.graph_path);
  }
  std::optional<int> n;
  if (opts.nodes_override)
    n = opts.nodes_override;
  return gslep::load_edge_list(opts.graph_path, n);
}

gslep::LaplacianKind parse_kind(const std::string &name) {
  return name == "comb" ? gslep::LaplacianKind::Combinatorial
                        : gslep::LaplacianKind::Normalized;
}

struct SpectrumArgs {
  GraphOptions graph;
  int nev = 0;
  std::string out;
  std::string eigvecs_out;
};

void run_spectrum(const SpectrumArgs &args) {
  gslep::Graph graph = load_graph(args.graph);
  auto spectrum = gslep::eig_laplacian(graph, parse_kind(args.graph.laplacian),
                                       args.nev);
  gslep::export_spectrum_csv(spectrum, args.out);
  if (!args.eigvecs_out.empty())
    gslep::export_eigenvectors_csv(spectrum, args.eigvecs_out);
}

struct SlepianArgs {
  GraphOptions graph;
  std::string subset;
  int bandwidth = 0;
  std::string design;
  std::string order;
  std::string basis_out;
  std::string metrics_out;
};

void run_slepian(const SlepianArgs &args) {
  gslep::Graph graph = load_graph(args.graph);
  gslep::NodeSubset subset = gslep::load_node_subset(args.subset);
  gslep::BandLimit band(args.bandwidth);
  auto spectrum = gslep::eig_laplacian(graph, parse_kind(args.graph.laplacian),
                                       band.n_w);
  gslep::SlepianBasis basis =
      args.design == "concentration"
          ? gslep::slepian_concentration(
                gslep::concentration_matrix(spectrum, band, subset))
          : gslep::slepian_embedding(
                gslep::embedding_concentration_matrix(spectrum, band, subset));
  gslep::PresentationOrder order =
      args.order.empty()          ? gslep::PresentationOrder::Canonical
      : args.order == "asc"       ? gslep::PresentationOrder::Ascending
                                  : gslep::PresentationOrder::Descending;
  gslep::export_basis_csv(basis, args.basis_out, order);
  gslep::export_metrics_csv(basis, args.metrics_out, order);
}

struct Classic1dArgs {
  int n = 0;
  int ns = 0;
  int center = 0;
  int nw = 0;
  std::string out;
  std::string mu_out;
};

void run_classic1d(const Classic1dArgs &args) {
  gslep::DftDesign design(
      args.n, args.nw, gslep::centered_interval(args.n, args.ns, args.center));
  gslep::Slepian1dBasis basis = gslep::slepian_1d(design);
  gslep::export_basis_csv(basis, args.out);
  gslep::export_mu_csv(basis, args.mu_out);
}

struct FilterArgs {
  GraphOptions graph;
  std::string signal;
  std::string window;
  std::string basis;
  std::string subset;
  int bandwidth = 0;
  std::string design = "embedding";
  bool passthrough = false;
  std::string out;
};

void run_filter(const FilterArgs &args) {
  gslep::Graph graph = load_graph(args.graph);
  gslep::SpectralWindow window = gslep::SpectralWindow::parse(args.window);
  gslep::LaplacianKind kind = parse_kind(args.graph.laplacian);
  Eigen::VectorXd filtered;
  if (args.basis == "laplacian") {
    int m = args.bandwidth ? args.bandwidth : graph.n_nodes();
    auto spectrum = gslep::eig_laplacian(graph, kind, m);
    Eigen::VectorXd signal =
        gslep::load_signal_csv(args.signal, graph.n_nodes());
    filtered =
        gslep::filter_laplacian(spectrum, window, signal, args.passthrough);
  } else {
    if (args.subset.empty() || !args.bandwidth)
      throw gslep::ValidationError(
          "--basis slepian needs --subset and --bandwidth");
    if (args.passthrough)
      throw gslep::ValidationError(
          "--passthrough applies only to --basis laplacian");
    gslep::NodeSubset subset = gslep::load_node_subset(args.subset);
    gslep::BandLimit band(args.bandwidth);
    auto spectrum = gslep::eig_laplacian(graph, kind, band.n_w);
    gslep::SlepianBasis basis =
        args.design == "concentration"
            ? gslep::slepian_concentration(
                  gslep::concentration_matrix(spectrum, band, subset))
            : gslep::slepian_embedding(gslep::embedding_concentration_matrix(
                  spectrum, band, subset));
    Eigen::VectorXd signal =
        gslep::load_signal_csv(args.signal, graph.n_nodes());
    filtered = gslep::filter_slepian(basis, window, signal,
                                     args.design == "concentration");
  }
  gslep::export_signal_csv(filtered, args.out);
}

struct SynthArgs {
  GraphOptions graph;
  int eigvec = 0;
  int cycles = 0;
  std::string out;
};

void run_synth(const SynthArgs &args) {
  if (args.eigvec < 1)
    throw gslep::ValidationError("eigenvector index must be at least 1");
  gslep::Graph graph = load_graph(args.graph);
  auto spectrum = gslep::eig_laplacian(graph, parse_kind(args.graph.laplacian),
                                       std::min(args.eigvec, graph.n_nodes()));
  Eigen::VectorXd signal =
      gslep::synth_eigvec_signal(spectrum, args.eigvec, args.cycles);
  gslep::export_signal_csv(signal, args.out);
}

struct MetricsArgs {
  GraphOptions graph;
  std::string subset;
  int bandwidth = 0;
  std::string signal;
  bool normalize = false;
  std::string out;
};

void run_metrics(const MetricsArgs &args) {
  gslep::Graph graph = load_graph(args.graph);
  gslep::NodeSubset subset = gslep::load_node_subset(args.subset);
  gslep::BandLimit band(args.bandwidth);
  auto spectrum = gslep::eig_laplacian(graph, parse_kind(args.graph.laplacian),
                                       band.n_w);
  Eigen::VectorXd signal = gslep::load_signal_csv(args.signal, graph.n_nodes());
  if (args.normalize) {
    double norm = signal.norm();
    if (norm == 0.0)
      throw gslep::ValidationError("cannot normalize the zero signal");
    signal /= norm;
  }
  gslep::CrossMetrics m = gslep::cross_metrics(spectrum, subset, signal);
  std::string text = "lambda_metric,mu_metric,xi_metric\n" +
                     gslep::format_g17(m.lambda_metric) + "," +
                     gslep::format_g17(m.mu_metric) + "," +
                     gslep::format_g17(m.xi_metric) + "\n";
  if (args.out.empty())
    std::fputs(text.c_str(), stdout);
  else
    gslep::write_text_atomic(args.out, "# signal cross metrics\n" + text);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Slepian bases and spectral filtering on graphs"};
  app.require_subcommand(1);

  SpectrumArgs spectrum_args;
  auto *spectrum_cmd =
      app.add_subcommand("spectrum", "Laplacian eigenvalues and eigenvectors");
  add_graph_options(spectrum_cmd, spectrum_args.graph);
  spectrum_cmd->add_option("--nev", spectrum_args.nev,
                           "Number of smallest eigenpairs")
      ->required();
  spectrum_cmd->add_option("--out", spectrum_args.out, "Eigenvalue CSV path")
      ->required();
  spectrum_cmd->add_option("--eigvecs", spectrum_args.eigvecs_out,
                           "Also write the eigenvector matrix here");
  spectrum_cmd->callback([&] { run_spectrum(spectrum_args); });

  SlepianArgs slepian_args;
  auto *slepian_cmd =
      app.add_subcommand("slepian", "Slepian basis for a band and subset");
  add_graph_options(slepian_cmd, slepian_args.graph);
  slepian_cmd->add_option("--subset", slepian_args.subset,
                          "File of selected node indices")
      ->required();
  slepian_cmd->add_option("--bandwidth", slepian_args.bandwidth,
                          "Number of lowest eigenvectors in the band")
      ->required();
  slepian_cmd->add_option("--design", slepian_args.design, "Design variant")
      ->check(CLI::IsMember({"concentration", "embedding"}))
      ->required();
  slepian_cmd->add_option("--order", slepian_args.order,
                          "Present rows sorted by value instead of the "
                          "design's native order")
      ->check(CLI::IsMember({"asc", "desc"}));
  slepian_cmd->add_option("--basis-out", slepian_args.basis_out,
                          "Basis vector CSV path")
      ->required();
  slepian_cmd->add_option("--metrics-out", slepian_args.metrics_out,
                          "Values and cross metrics CSV path")
      ->required();
  slepian_cmd->callback([&] { run_slepian(slepian_args); });

  Classic1dArgs classic_args;
  auto *classic_cmd = app.add_subcommand(
      "classic1d", "Classic DFT Slepian design on a sample interval");
  classic_cmd->add_option("--n", classic_args.n, "Signal length")->required();
  classic_cmd->add_option("--ns", classic_args.ns, "Interval sample count")
      ->required();
  classic_cmd->add_option("--center", classic_args.center, "Interval center")
      ->required();
  classic_cmd->add_option("--nw", classic_args.nw, "Band size")->required();
  classic_cmd->add_option("--out", classic_args.out, "Basis CSV path")
      ->required();
  classic_cmd->add_option("--mu-out", classic_args.mu_out,
                          "Concentration CSV path")
      ->required();
  classic_cmd->callback([&] { run_classic1d(classic_args); });

  FilterArgs filter_args;
  auto *filter_cmd =
      app.add_subcommand("filter", "Shape a signal in a spectral basis");
  add_graph_options(filter_cmd, filter_args.graph);
  filter_cmd->add_option("--signal", filter_args.signal, "Input signal CSV")
      ->required();
  filter_cmd->add_option("--window", filter_args.window,
                         "heat:<t>, lowpass:<cutoff> or table:<path>")
      ->required();
  filter_cmd->add_option("--basis", filter_args.basis, "Filtering basis")
      ->check(CLI::IsMember({"laplacian", "slepian"}))
      ->required();
  filter_cmd->add_option("--subset", filter_args.subset,
                         "Subset file for the slepian basis");
  filter_cmd->add_option("--bandwidth", filter_args.bandwidth,
                         "Band size; for the laplacian basis it truncates "
                         "the computed spectrum");
  filter_cmd->add_option("--design", filter_args.design,
                         "Slepian design variant")
      ->check(CLI::IsMember({"concentration", "embedding"}))
      ->default_val("embedding");
  filter_cmd->add_flag("--passthrough", filter_args.passthrough,
                       "Pass the out-of-band component unchanged");
  filter_cmd->add_option("--out", filter_args.out, "Filtered signal CSV path")
      ->required();
  filter_cmd->callback([&] { run_filter(filter_args); });

  SynthArgs synth_args;
  auto *synth_cmd = app.add_subcommand(
      "synth-signal", "Sinusoid over an eigenvector's value range");
  add_graph_options(synth_cmd, synth_args.graph);
  synth_cmd->add_option("--eigvec", synth_args.eigvec,
                        "Eigenvector index, 1-based")
      ->required();
  synth_cmd->add_option("--cycles", synth_args.cycles, "Sinusoid periods")
      ->required();
  synth_cmd->add_option("--out", synth_args.out, "Signal CSV path")
      ->required();
  synth_cmd->callback([&] { run_synth(synth_args); });

  MetricsArgs metrics_args;
  auto *metrics_cmd = app.add_subcommand(
      "metrics", "Cross metrics of a signal against a band and subset");
  add_graph_options(metrics_cmd, metrics_args.graph);
  metrics_cmd->add_option("--subset", metrics_args.subset,
                          "File of selected node indices")
      ->required();
  metrics_cmd->add_option("--bandwidth", metrics_args.bandwidth, "Band size")
      ->required();
  metrics_cmd->add_option("--signal", metrics_args.signal, "Signal CSV")
      ->required();
  metrics_cmd->add_flag("--normalize", metrics_args.normalize,
                        "Scale the signal to unit norm first");
  metrics_cmd->add_option("--out", metrics_args.out,
                          "CSV path; prints to stdout when omitted");
  metrics_cmd->callback([&] { run_metrics(metrics_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const gslep::IoError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
