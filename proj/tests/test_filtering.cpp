#include "gslep/csv.hpp"
#include "gslep/errors.hpp"
#include "gslep/filtering.hpp"
#include "gslep/graph.hpp"
#include "gslep/slepian.hpp"
#include "gslep/spectral.hpp"

#include "support/random_graphs.hpp"
#include "support/temp_dir.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <random>

using Catch::Matchers::ContainsSubstring;
using namespace gslep;

namespace {

Eigen::VectorXd random_signal(std::mt19937 &rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i)
    x[i] = gauss(rng);
  return x;
}

} // namespace

TEST_CASE("window shapes") {
  SpectralWindow heat = SpectralWindow::heat_kernel(2.0);
  REQUIRE(heat(0.0) == 1.0);
  REQUIRE(heat(1.0) == Catch::Approx(std::exp(-2.0)).epsilon(1e-14));
  REQUIRE(SpectralWindow::heat_kernel(0.0)(5.0) == 1.0);
  REQUIRE_THROWS_AS(SpectralWindow::heat_kernel(-1.0), ValidationError);

  SpectralWindow low = SpectralWindow::ideal_lowpass(1.5);
  REQUIRE(low(1.5) == 1.0);
  REQUIRE(low(1.5 + 1e-12) == 0.0);
  REQUIRE(low(0.0) == 1.0);

  SpectralWindow tab = SpectralWindow::table({{0.0, 1.0}, {2.0, 0.0}});
  REQUIRE(tab(0.0) == 1.0);
  REQUIRE(tab(1.0) == Catch::Approx(0.5).margin(1e-15));
  REQUIRE(tab(2.0) == 0.0);
  // Out of range holds the nearest endpoint.
  REQUIRE(tab(-3.0) == 1.0);
  REQUIRE(tab(9.0) == 0.0);

  // Points are sorted internally.
  SpectralWindow tab2 = SpectralWindow::table({{2.0, 4.0}, {0.0, 0.0}});
  REQUIRE(tab2(1.0) == Catch::Approx(2.0).margin(1e-15));

  REQUIRE_THROWS_AS(SpectralWindow::table({}), ValidationError);
  REQUIRE_THROWS_WITH(SpectralWindow::table({{1.0, 0.0}, {1.0, 1.0}}),
                      ContainsSubstring("repeats x=1"));
}

TEST_CASE("window parsing") {
  testsupport::TempDir dir;
  REQUIRE(SpectralWindow::parse("heat:0.5").kind() ==
          SpectralWindow::Kind::HeatKernel);
  REQUIRE(SpectralWindow::parse("lowpass:2").kind() ==
          SpectralWindow::Kind::IdealLowPass);

  auto table_path = dir.file("gain.csv");
  {
    std::ofstream out(table_path);
    out << "# gain curve\nx,0 1\n";
  }
  // A malformed table row fails on parsing the x token.
  REQUIRE_THROWS_AS(SpectralWindow::parse("table:" + table_path.string()),
                    ValidationError);
  {
    std::ofstream out(table_path);
    out << "0,1\n2,0.25\n";
  }
  SpectralWindow tab = SpectralWindow::parse("table:" + table_path.string());
  REQUIRE(tab(2.0) == 0.25);

  REQUIRE_THROWS_WITH(SpectralWindow::parse("boxcar:3"),
                      ContainsSubstring("unknown window"));
  REQUIRE_THROWS_WITH(SpectralWindow::parse("heat"),
                      ContainsSubstring("unknown window"));
  REQUIRE_THROWS_AS(SpectralWindow::parse("table:" +
                                          dir.file("missing.csv").string()),
                    IoError);
}

TEST_CASE("laplacian filtering basics") {
  std::mt19937 rng(11);
  Graph g = testsupport::random_connected_graph(rng, 12);
  const int n = g.n_nodes();
  LaplacianSpectrum spec = eig_laplacian(g, LaplacianKind::Combinatorial, n);
  Eigen::VectorXd x = random_signal(rng, n);

  SECTION("all-pass window reproduces the signal") {
    Eigen::VectorXd y = filter_laplacian(spec, SpectralWindow::heat_kernel(0.0), x);
    REQUIRE((y - x).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SECTION("cutoff below the spectral gap keeps only the mean component") {
    // The first eigenvalue is zero only up to solver roundoff, so place the
    // cutoff just above roundoff and well under the second eigenvalue.
    Eigen::VectorXd y =
        filter_laplacian(spec, SpectralWindow::ideal_lowpass(1e-9), x);
    Eigen::VectorXd mean = Eigen::VectorXd::Constant(n, x.mean());
    REQUIRE((y - mean).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SECTION("eigenvectors are scaled by their gain") {
    SpectralWindow heat = SpectralWindow::heat_kernel(0.7);
    for (int k = 0; k < n; k += 3) {
      Eigen::VectorXd y = filter_laplacian(spec, heat, spec.eigenvectors.col(k));
      Eigen::VectorXd expected =
          heat(spec.eigenvalues[k]) * spec.eigenvectors.col(k);
      REQUIRE((y - expected).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  SECTION("linearity") {
    SpectralWindow heat = SpectralWindow::heat_kernel(1.3);
    Eigen::VectorXd z = random_signal(rng, n);
    Eigen::VectorXd lhs = filter_laplacian(spec, heat, 2.0 * x - 3.0 * z);
    Eigen::VectorXd rhs = 2.0 * filter_laplacian(spec, heat, x) -
                          3.0 * filter_laplacian(spec, heat, z);
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SECTION("ideal lowpass is idempotent") {
    SpectralWindow low = SpectralWindow::ideal_lowpass(spec.eigenvalues[n / 2]);
    Eigen::VectorXd once = filter_laplacian(spec, low, x);
    Eigen::VectorXd twice = filter_laplacian(spec, low, once);
    REQUIRE((once - twice).cwiseAbs().maxCoeff() <= 1e-10);
  }

  SECTION("heat smoothing lowers the quadratic form") {
    Eigen::MatrixXd l = laplacian(g, LaplacianKind::Combinatorial);
    Eigen::VectorXd y = filter_laplacian(spec, SpectralWindow::heat_kernel(0.5), x);
    REQUIRE(y.dot(l * y) <= x.dot(l * x) + 1e-12);
  }

  SECTION("length mismatch") {
    Eigen::VectorXd bad = Eigen::VectorXd::Zero(n + 1);
    REQUIRE_THROWS_AS(filter_laplacian(spec, SpectralWindow::heat_kernel(1.0), bad),
                      ValidationError);
  }
}

TEST_CASE("passthrough keeps the unseen component") {
  std::mt19937 rng(21);
  Graph g = testsupport::random_connected_graph(rng, 10);
  LaplacianSpectrum part = eig_laplacian(g, LaplacianKind::Combinatorial, 4);
  Eigen::VectorXd x = random_signal(rng, 10);

  SpectralWindow all_pass = SpectralWindow::heat_kernel(0.0);
  // Truncated without passthrough: only the projection survives.
  Eigen::VectorXd projected = filter_laplacian(part, all_pass, x, false);
  Eigen::VectorXd expected =
      part.eigenvectors * (part.eigenvectors.transpose() * x);
  REQUIRE((projected - expected).cwiseAbs().maxCoeff() <= 1e-10);

  // With passthrough an all-pass window is the identity again.
  Eigen::VectorXd kept = filter_laplacian(part, all_pass, x, true);
  REQUIRE((kept - x).cwiseAbs().maxCoeff() <= 1e-10);

  // Shaped part plus untouched remainder.
  SpectralWindow low = SpectralWindow::ideal_lowpass(part.eigenvalues[1]);
  Eigen::VectorXd y = filter_laplacian(part, low, x, true);
  Eigen::VectorXd remainder = x - expected;
  Eigen::VectorXd shaped = filter_laplacian(part, low, x, false);
  REQUIRE((y - shaped - remainder).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("slepian filtering") {
  std::mt19937 rng(33);
  Graph g = testsupport::random_connected_graph(rng, 14);
  const int n = g.n_nodes();
  LaplacianSpectrum spec = eig_laplacian(g, LaplacianKind::Combinatorial, n);
  NodeSubset subset({0, 1, 2, 3, 4, 5, 6});
  BandLimit band(5);
  Eigen::VectorXd x = random_signal(rng, n);

  SlepianBasis emb =
      slepian_embedding(embedding_concentration_matrix(spec, band, subset));
  SlepianBasis conc =
      slepian_concentration(concentration_matrix(spec, band, subset));

  SECTION("all-pass equals the band projection") {
    SpectralWindow all_pass = SpectralWindow::heat_kernel(0.0);
    Eigen::VectorXd via_emb = filter_slepian(emb, all_pass, x);
    Eigen::VectorXd projection =
        spec.eigenvectors.leftCols(5) *
        (spec.eigenvectors.leftCols(5).transpose() * x);
    REQUIRE((via_emb - projection).cwiseAbs().maxCoeff() <= 1e-8);

    // Same span, so the concentration basis projects identically.
    Eigen::VectorXd via_conc = filter_slepian(conc, all_pass, x, true);
    REQUIRE((via_conc - projection).cwiseAbs().maxCoeff() <= 1e-8);
  }

  SECTION("concentration values need an explicit opt-in") {
    REQUIRE_THROWS_WITH(
        filter_slepian(conc, SpectralWindow::heat_kernel(1.0), x),
        ContainsSubstring("explicitly allowed"));
    REQUIRE_NOTHROW(
        filter_slepian(conc, SpectralWindow::heat_kernel(1.0), x, true));
    REQUIRE_NOTHROW(filter_slepian(emb, SpectralWindow::heat_kernel(1.0), x));
  }

  SECTION("basis vectors are scaled by their gain") {
    SpectralWindow heat = SpectralWindow::heat_kernel(0.9);
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd y = filter_slepian(emb, heat, emb.vectors.col(k));
      Eigen::VectorXd expected = heat(emb.values[k]) * emb.vectors.col(k);
      REQUIRE((y - expected).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }

  SECTION("length mismatch") {
    Eigen::VectorXd bad = Eigen::VectorXd::Zero(n - 1);
    REQUIRE_THROWS_AS(filter_slepian(emb, SpectralWindow::heat_kernel(1.0), bad),
                      ValidationError);
  }
}

TEST_CASE("synthetic eigenvector signal") {
  Graph path = testsupport::path_graph(64);
  LaplacianSpectrum spec = eig_laplacian(path, LaplacianKind::Combinatorial, 3);

  SECTION("oscillates along the second eigenvector") {
    Eigen::VectorXd s = synth_eigvec_signal(spec, 2, 8);
    REQUIRE(s.size() == 64);
    REQUIRE(s.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    // Count zero places: exact zeros plus strict sign changes between
    // consecutive samples along the path.
    int zeros = 0;
    for (int i = 0; i < 64; ++i)
      if (s[i] == 0.0)
        ++zeros;
    for (int i = 0; i + 1 < 64; ++i)
      if (s[i] * s[i + 1] < 0.0)
        ++zeros;
    REQUIRE(zeros >= 16);
  }

  SECTION("zero cycles gives the zero signal") {
    Eigen::VectorXd s = synth_eigvec_signal(spec, 2, 0);
    REQUIRE(s.cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("endpoints of the value range are sine endpoints") {
    Eigen::VectorXd s = synth_eigvec_signal(spec, 2, 3);
    Eigen::VectorXd v = spec.eigenvectors.col(1);
    int arg_min = 0, arg_max = 0;
    for (int i = 1; i < 64; ++i) {
      if (v[i] < v[arg_min])
        arg_min = i;
      if (v[i] > v[arg_max])
        arg_max = i;
    }
    REQUIRE(std::abs(s[arg_min]) <= 1e-12);
    REQUIRE(std::abs(s[arg_max]) <= 1e-9);
  }

  SECTION("constant eigenvector is rejected") {
    REQUIRE_THROWS_WITH(synth_eigvec_signal(spec, 1, 4),
                        ContainsSubstring("constant"));
  }

  SECTION("index bounds") {
    REQUIRE_THROWS_AS(synth_eigvec_signal(spec, 0, 4), ValidationError);
    REQUIRE_THROWS_AS(synth_eigvec_signal(spec, 4, 4), ValidationError);
    REQUIRE_THROWS_AS(synth_eigvec_signal(spec, 2, -1), ValidationError);
  }
}

TEST_CASE("signal csv round trip") {
  testsupport::TempDir dir;
  auto write = [&](const std::string &name, const std::string &text) {
    auto path = dir.file(name);
    std::ofstream out(path);
    out << text;
    return path;
  };

  SECTION("write then read is exact") {
    Eigen::VectorXd s(4);
    s << 0.25, -1.0 / 3.0, 5e-17, 12.5;
    auto path = dir.file("sig.csv");
    export_signal_csv(s, path);
    Eigen::VectorXd back = load_signal_csv(path, 4);
    REQUIRE((back - s).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("header row and comments are skipped, order is free") {
    auto path = write("sig.csv", "# data\nnode,value\n2,0.5\n0,1\n1,-2\n");
    Eigen::VectorXd s = load_signal_csv(path, 3);
    REQUIRE(s[0] == 1.0);
    REQUIRE(s[1] == -2.0);
    REQUIRE(s[2] == 0.5);
  }

  SECTION("node out of range") {
    auto path = write("sig.csv", "0,1\n3,2\n");
    REQUIRE_THROWS_WITH(load_signal_csv(path, 3),
                        ContainsSubstring("out of range"));
  }

  SECTION("node listed twice") {
    auto path = write("sig.csv", "0,1\n0,2\n1,0\n");
    REQUIRE_THROWS_WITH(load_signal_csv(path, 2),
                        ContainsSubstring("appears twice"));
  }

  SECTION("missing nodes") {
    auto path = write("sig.csv", "0,1\n");
    REQUIRE_THROWS_WITH(load_signal_csv(path, 3),
                        ContainsSubstring("covers 1 of 3"));
  }

  SECTION("malformed row") {
    auto path = write("sig.csv", "0,1,2\n");
    REQUIRE_THROWS_AS(load_signal_csv(path, 1), ValidationError);
  }

  SECTION("missing file") {
    REQUIRE_THROWS_AS(load_signal_csv(dir.file("nope.csv"), 3), IoError);
  }
}
