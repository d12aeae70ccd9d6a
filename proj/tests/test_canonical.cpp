#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "majorana/canonical.hpp"
#include "majorana/chain.hpp"
#include "majorana/rng.hpp"

using namespace majorana;

namespace {

MajoranaForm random_form(std::uint64_t seed, int trial, int n_sites, double noise_v0 = 0.0) {
  ChainParams p;
  p.n_sites = n_sites;
  p.t = rng::uniform(rng::stream(seed, trial, 0), -2.0, 2.0);
  p.delta_abs = rng::uniform(rng::stream(seed, trial, 1), 0.0, 2.0);
  p.mu = rng::uniform(rng::stream(seed, trial, 2), -3.0, 3.0);
  if (noise_v0 > 0.0) {
    const SitePotentials pots = sample_noise({noise_v0, seed + 1000, static_cast<std::uint64_t>(trial)}, n_sites);
    return build_majorana_matrix(p, pots);
  }
  return build_majorana_matrix(p);
}

// Independent energy oracle: iA is Hermitian with eigenvalues +-eps_m.
std::vector<double> positive_spectrum(const Eigen::MatrixXd& a) {
  const std::complex<double> i_unit(0.0, 1.0);
  Eigen::MatrixXcd h = i_unit * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  std::vector<double> eps;
  for (Eigen::Index k = a.rows() / 2; k < a.rows(); ++k) eps.push_back(solver.eigenvalues()(k));
  return eps;
}

}  // namespace

TEST_CASE("single occupied site lands in the flipped gauge") {
  ChainParams p;
  p.mu = 0.4;
  CanonicalForm canon = canonicalize(build_majorana_matrix(p));
  REQUIRE(canon.epsilons.size() == 1);
  REQUIRE(canon.epsilons[0] == Catch::Approx(0.4).margin(1e-15));
  REQUIRE(canon.residual <= 1e-15);
  REQUIRE(canon.det_w == -1);

  gauge_fix_lowest_pair(canon);
  REQUIRE(canon.w(0, 0) == Catch::Approx(1.0).margin(1e-15));
  REQUIRE(canon.w(0, 1) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(canon.w(1, 0) == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(canon.w(1, 1) == Catch::Approx(-1.0).margin(1e-15));
}

TEST_CASE("single empty site keeps the identity transform") {
  ChainParams p;
  p.mu = -0.4;
  CanonicalForm canon = canonicalize(build_majorana_matrix(p));
  REQUIRE(canon.epsilons[0] == Catch::Approx(0.4).margin(1e-15));
  REQUIRE(canon.det_w == 1);
  gauge_fix_lowest_pair(canon);
  REQUIRE((canon.w - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("the ideal point is solved to machine precision") {
  ChainParams p;
  p.n_sites = 8;
  p.t = 1.0;
  p.delta_abs = 1.0;
  p.mu = 0.0;
  CanonicalForm canon = canonicalize(build_majorana_matrix(p));
  REQUIRE(canon.epsilons[0] <= 1e-14);
  for (std::size_t m = 1; m < canon.epsilons.size(); ++m)
    REQUIRE(canon.epsilons[m] == Catch::Approx(2.0).margin(1e-13));
  REQUIRE(canon.residual <= 1e-13);

  // the end Majoranas decouple exactly: the zero mode is e_1 / e_2N up to sign
  const ZeroModePair pair = extract_zero_modes(canon);
  Eigen::VectorXd g1 = pair.gamma1_components.cwiseAbs();
  Eigen::VectorXd g2 = pair.gamma2_components.cwiseAbs();
  REQUIRE(g1(0) == Catch::Approx(1.0).margin(1e-13));
  REQUIRE(g1.tail(15).cwiseAbs().maxCoeff() <= 1e-13);
  REQUIRE(g2(15) == Catch::Approx(1.0).margin(1e-13));
  REQUIRE(g2.head(15).cwiseAbs().maxCoeff() <= 1e-13);
  REQUIRE(pair.localization == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("random chains: orthogonality, ordering, residual, spectrum") {
  for (int trial = 0; trial < 10; ++trial) {
    const double v0 = trial % 2 == 0 ? 0.0 : 1.5;
    const MajoranaForm form = random_form(21, trial, 9, v0);
    const CanonicalForm canon = canonicalize(form);
    const int n = 2 * form.n_sites;

    REQUIRE((canon.w * canon.w.transpose() - Eigen::MatrixXd::Identity(n, n))
                .cwiseAbs()
                .maxCoeff() < 1e-11);
    REQUIRE(std::abs(canon.det_w) == 1);
    for (std::size_t m = 0; m + 1 < canon.epsilons.size(); ++m) {
      REQUIRE(canon.epsilons[m] >= 0.0);
      REQUIRE(canon.epsilons[m] <= canon.epsilons[m + 1]);
    }
    REQUIRE(canon.residual < 1e-9 * std::max(1.0, canon.epsilons.back()));

    const std::vector<double> oracle = positive_spectrum(form.matrix);
    for (std::size_t m = 0; m < oracle.size(); ++m)
      REQUIRE(canon.epsilons[m] == Catch::Approx(oracle[m]).margin(1e-10));
  }
}

TEST_CASE("canonicalize is bitwise deterministic") {
  const MajoranaForm form = random_form(5, 0, 12, 1.0);
  const CanonicalForm a = canonicalize(form);
  const CanonicalForm b = canonicalize(form);
  REQUIRE(a.det_w == b.det_w);
  REQUIRE(a.epsilons == b.epsilons);
  REQUIRE((a.w.array() == b.w.array()).all());
}

TEST_CASE("frozen reference values for the fifty-site chain") {
  ChainParams p;
  p.n_sites = 50;
  p.delta_abs = 0.8;
  p.mu = 0.4;
  CanonicalForm canon = canonicalize(build_majorana_matrix(p));
  REQUIRE(canon.epsilons[0] < 1e-11);
  REQUIRE(canon.epsilons[1] == Catch::Approx(1.5097248568826351).margin(1e-12));
  const double loc = gauge_fix_lowest_pair(canon);
  REQUIRE(loc == Catch::Approx(0.99999999999999378).margin(1e-12));

  ChainParams weak = p;
  weak.delta_abs = 0.2;
  weak.mu = 1.97;
  CanonicalForm canon_weak = canonicalize(build_majorana_matrix(weak));
  REQUIRE(canon_weak.epsilons[0] == Catch::Approx(0.00072965505563120684).margin(1e-11));
  REQUIRE(canon_weak.epsilons[1] == Catch::Approx(0.041206585732643339).margin(1e-11));
  const double loc_weak = gauge_fix_lowest_pair(canon_weak);
  REQUIRE(loc_weak == Catch::Approx(0.98349880470608841).margin(1e-10));
}

TEST_CASE("gauge fixing preserves the canonical data") {
  const MajoranaForm form = random_form(77, 1, 10);
  CanonicalForm canon = canonicalize(form);
  const CanonicalForm before = canon;
  gauge_fix_lowest_pair(canon);

  const int n = 2 * form.n_sites;
  REQUIRE(canon.det_w == before.det_w);
  REQUIRE(canon.epsilons == before.epsilons);
  REQUIRE((canon.w.bottomRows(n - 2).array() == before.w.bottomRows(n - 2).array()).all());
  REQUIRE((canon.w * canon.w.transpose() - Eigen::MatrixXd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-11);

  Eigen::MatrixXd r = canon.w * form.matrix * canon.w.transpose();
  for (int m = 0; m < form.n_sites; ++m) {
    r(2 * m, 2 * m + 1) -= canon.epsilons[static_cast<std::size_t>(m)];
    r(2 * m + 1, 2 * m) += canon.epsilons[static_cast<std::size_t>(m)];
  }
  REQUIRE(r.cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, canon.epsilons.back()));

  // the sign convention pins the largest entry of the first row positive
  Eigen::Index imax = 0;
  canon.w.row(0).cwiseAbs().maxCoeff(&imax);
  REQUIRE(canon.w(0, imax) > 0.0);
}

TEST_CASE("zero mode counting and extraction respect the tolerance") {
  ChainParams topo;
  topo.n_sites = 50;
  topo.delta_abs = 0.8;
  topo.mu = 0.4;
  const CanonicalForm canon = canonicalize(build_majorana_matrix(topo));
  REQUIRE(zero_mode_count(canon) == 1);
  const ZeroModePair pair = extract_zero_modes(canon);
  REQUIRE(pair.eps1 < 0.002);
  REQUIRE(pair.localization > 0.99);
  REQUIRE(pair.gamma1_components.size() == 100);

  ChainParams trivial;
  trivial.n_sites = 40;
  trivial.delta_abs = 0.2;
  trivial.mu = 2.5;
  const CanonicalForm outside = canonicalize(build_majorana_matrix(trivial));
  REQUIRE(zero_mode_count(outside) == 0);
  REQUIRE_THROWS_AS(extract_zero_modes(outside), empty_result_error);

  // a generous tolerance counts everything
  REQUIRE(zero_mode_count(outside, 100.0) == 40);
}

TEST_CASE("broken inputs are rejected") {
  MajoranaForm form = build_majorana_matrix({4, 1.0, 0.5, 0.0, 0.3});
  form.matrix(0, 1) += 0.5;  // breaks antisymmetry
  REQUIRE_THROWS_AS(canonicalize(form), std::invalid_argument);

  MajoranaForm mismatch = build_majorana_matrix({4, 1.0, 0.5, 0.0, 0.3});
  mismatch.n_sites = 5;
  REQUIRE_THROWS_AS(canonicalize(mismatch), std::invalid_argument);
}
