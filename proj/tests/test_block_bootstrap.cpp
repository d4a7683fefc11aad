#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include <panelband/bootstrap.hpp>
#include <panelband/simulate.hpp>

using namespace panelband;
using Catch::Approx;

namespace {

PanelSeries small_panel(std::uint64_t seed, int n = 40, int r = 2, int G = 9) {
  SimConfig cfg;
  cfg.n = n;
  cfg.r = r;
  cfg.G = G;
  cfg.a = 0.2;
  cfg.seed = seed;
  return simulate_panel(cfg);
}

}  // namespace

TEST_CASE("block means") {
  SECTION("m=1 reproduces the panel") {
    const PanelSeries p = small_panel(1);
    const BlockMeans t = block_means(p, 1);
    REQUIRE(t.data.rows() == p.n() - 1);
    REQUIRE((t.data - p.data().topRows(p.n() - 1)).array().abs().maxCoeff() <
            1e-15);
  }

  SECTION("constant panel") {
    const Grid grid = make_grid(3);
    const PanelSeries p(Matrix::Constant(6, 3, 4.25), grid, 1);
    const BlockMeans t = block_means(p, 3);
    REQUIRE((t.data.array() - 4.25).abs().maxCoeff() < 1e-15);
  }

  SECTION("hand computation: n=4, m=2, values 1,2,3,4") {
    const Grid grid = make_grid(2);
    Matrix data(4, 2);
    data << 1, 1, 2, 2, 3, 3, 4, 4;
    const BlockMeans t = block_means(PanelSeries(data, grid, 1), 2);
    REQUIRE(t.data.rows() == 2);
    REQUIRE(t.data(0, 0) == Approx(1.5));
    REQUIRE(t.data(1, 0) == Approx(2.5));
  }

  SECTION("m out of range") {
    const PanelSeries p = small_panel(2, 10);
    REQUIRE_THROWS_AS(block_means(p, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(block_means(p, 10), std::invalid_argument);
    REQUIRE_NOTHROW(block_means(p, 9));
  }
}

TEST_CASE("multiplier draw") {
  const PanelSeries p = small_panel(3);
  const int m = 4;
  const BlockMeans blocks = block_means(p, m);
  const Eigen::Index nm = blocks.data.rows();

  SECTION("zero multipliers give zero") {
    const Matrix phi = multiplier_draw(p, blocks, Vector::Zero(nm));
    REQUIRE(phi.array().abs().maxCoeff() == 0.0);
  }

  SECTION("constant panel gives zero for any multipliers") {
    const PanelSeries c(Matrix::Constant(20, 6, 3.0), make_grid(3), 2);
    const BlockMeans cb = block_means(c, 5);
    RngStream rng(4, 0);
    Vector mult(15);
    for (int i = 0; i < 15; ++i) mult[i] = rng.normal();
    const Matrix phi = multiplier_draw(c, cb, mult);
    REQUIRE(phi.array().abs().maxCoeff() < 1e-12);
  }

  SECTION("length mismatch") {
    REQUIRE_THROWS_AS(multiplier_draw(p, blocks, Vector::Zero(nm + 1)),
                      std::invalid_argument);
  }

  SECTION("conditional variance matches the quadratic form") {
    // Given the panel, Phi_j(u) is Gaussian with variance
    // (m/(n-m)) sum_i [T_{i,m,j}(u) - ghat_j(u)]^2.
    const int j = 1, g = 5, N = 100'000;
    const Vector mean = p.data().colwise().mean();
    const Eigen::Index col = static_cast<Eigen::Index>(j) * p.G() + g;
    double var_true = 0.0;
    for (Eigen::Index i = 0; i < nm; ++i) {
      const double d = blocks.data(i, col) - mean[col];
      var_true += d * d;
    }
    var_true *= static_cast<double>(m) / (p.n() - m);

    RngStream rng(5, 0);
    Vector mult(nm);
    double sum = 0, sum2 = 0;
    const Vector centered_col =
        blocks.data.col(col).array() - mean[col];
    const double factor = std::sqrt(static_cast<double>(m) / (p.n() - m));
    for (int rep = 0; rep < N; ++rep) {
      for (Eigen::Index i = 0; i < nm; ++i) mult[i] = rng.normal();
      const double v = factor * centered_col.dot(mult);
      sum += v;
      sum2 += v * v;
    }
    const double mc_mean = sum / N;
    const double var_mc = sum2 / N - mc_mean * mc_mean;
    REQUIRE(std::abs(var_mc - var_true) <
            3.0 * var_true * std::sqrt(2.0 / N));
  }

  SECTION("multiplier_draw agrees with the column formula") {
    RngStream rng(6, 0);
    Vector mult(nm);
    for (Eigen::Index i = 0; i < nm; ++i) mult[i] = rng.normal();
    const Matrix phi = multiplier_draw(p, blocks, mult);
    const Vector mean = p.data().colwise().mean();
    const double factor = std::sqrt(static_cast<double>(m) / (p.n() - m));
    const int j = 0, g = 2;
    const Eigen::Index col = g;
    double direct = 0.0;
    for (Eigen::Index i = 0; i < nm; ++i)
      direct += (blocks.data(i, col) - mean[col]) * mult[i];
    REQUIRE(phi(j, g) == Approx(factor * direct).epsilon(1e-10));
  }
}

TEST_CASE("centering identity of the block sum") {
  const PanelSeries p = small_panel(7, 60, 3, 11);
  for (const int m : {1, 5, 20}) {
    const Matrix centered = centered_block_means(p, m);
    const Vector with_units = centered.colwise().sum();
    const BlockMeans blocks = block_means(p, m);
    const Vector direct =
        (p.n() - m) *
        (blocks.data.colwise().mean() - p.data().colwise().mean());
    REQUIRE((with_units - direct).array().abs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("order statistic quantile") {
  std::vector<double> reps = {5.0, 1.0, 4.0, 2.0, 3.0};

  SECTION("index formula and clamping") {
    REQUIRE(quantile_index(0.05, 100) == 95);
    REQUIRE(quantile_index(0.999, 100) == 1);  // floor(0.1) clamps up to 1
    REQUIRE(quantile_index(1e-9, 100) == 100);
    REQUIRE(order_statistic_quantile(reps, 0.999) == 1.0);
    REQUIRE(order_statistic_quantile({7.5}, 0.3) == 7.5);
  }

  SECTION("monotone in 1 - alpha") {
    double prev = -1e300;
    for (const double alpha : {0.9, 0.6, 0.4, 0.2, 0.05, 0.01}) {
      const double q = order_statistic_quantile(reps, alpha);
      REQUIRE(q >= prev);
      prev = q;
    }
  }
}

TEST_CASE("bootstrap sup quantile") {
  const PanelSeries p = small_panel(8, 50, 2, 7);
  const Matrix scale = sample_mean_sd(p).sd;
  BootstrapConfig cfg;
  cfg.m = 5;
  cfg.B = 200;
  cfg.alpha = 0.05;
  cfg.seed = 99;

  SECTION("replicates are deterministic across thread counts") {
    const auto r1 = bootstrap_sup_quantile(p, cfg, scale, 1);
    const auto r4 = bootstrap_sup_quantile(p, cfg, scale, 4);
    const auto r16 = bootstrap_sup_quantile(p, cfg, scale, 16);
    REQUIRE(r1.replicates == r4.replicates);
    REQUIRE(r1.replicates == r16.replicates);
    REQUIRE(r1.quantile == r16.quantile);
  }

  SECTION("B=1 returns the single replicate") {
    BootstrapConfig one = cfg;
    one.B = 1;
    const auto res = bootstrap_sup_quantile(p, one, scale);
    REQUIRE(res.quantile == res.replicates[0]);
  }

  SECTION("scale equivariance under panel rescaling by 7") {
    const PanelSeries scaled(7.0 * p.data(), p.grid(), p.r());
    const Matrix scale7 = sample_mean_sd(scaled).sd;
    const auto base = bootstrap_sup_quantile(p, cfg, scale);
    const auto other = bootstrap_sup_quantile(scaled, cfg, scale7);
    for (std::size_t i = 0; i < base.replicates.size(); ++i)
      REQUIRE(other.replicates[i] ==
              Approx(base.replicates[i]).epsilon(1e-10));
  }

  SECTION("degenerate scale everywhere is an error") {
    const PanelSeries c(Matrix::Constant(20, 6, 1.0), make_grid(3), 2);
    const Matrix zero_scale = sample_mean_sd(c).sd;
    REQUIRE_THROWS_AS(bootstrap_sup_quantile(c, cfg, zero_scale),
                      DegenerateScaleError);
  }

  SECTION("invalid configs") {
    BootstrapConfig bad = cfg;
    bad.m = p.n();
    REQUIRE_THROWS_AS(bootstrap_sup_quantile(p, bad, scale),
                      std::invalid_argument);
    bad = cfg;
    bad.alpha = 0.0;
    REQUIRE_THROWS_AS(bootstrap_sup_quantile(p, bad, scale),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(bootstrap_sup_quantile(p, cfg, Matrix::Ones(1, 1)),
                      std::invalid_argument);
  }
}
