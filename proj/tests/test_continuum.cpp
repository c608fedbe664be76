#include <doctest.h>

#include <cmath>
#include <numbers>

#include "njl/continuum.hpp"
#include "njl/spectra.hpp"
#include "njl/symmetry.hpp"

using namespace njl;
using namespace njl::continuum;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("one-particle spectrum matches the closed form") {
  for (int L : {1, 2}) {
    const LatticeConfig cfg(3, L);
    for (double m : {0.0, 0.45}) {
      const auto rep = dispersion_check(cfg, 1.0, m);
      INFO("L = ", L, " m = ", m, " max diff ", rep.max_abs_diff);
      CHECK(rep.ok);
    }
  }

  CHECK_THROWS(one_particle_spectrum(LatticeConfig(2, 1), 1.0, 0.0));

  // kappa = 1, m = 0, L = 1: +-2 sqrt(3) present
  const auto spec = one_particle_spectrum(LatticeConfig(3, 1), 1.0, 0.0);
  CHECK(spec.front() == doctest::Approx(-2.0 * std::sqrt(3.0)));
  CHECK(spec.back() == doctest::Approx(2.0 * std::sqrt(3.0)));

  // m = 0 spectrum symmetric under negation
  for (std::size_t i = 0; i < spec.size(); ++i)
    CHECK(spec[i] == doctest::Approx(-spec[spec.size() - 1 - i]));

  // m != 0: spectral gap of at least |m|; equals the closed-form minimum
  const double m = 0.4;
  const auto gapped = one_particle_spectrum(LatticeConfig(3, 2), 0.8, m);
  double min_abs = 1e300, expected = 1e300;
  for (double e : gapped) min_abs = std::min(min_abs, std::abs(e));
  for (const auto& k : fermion_momenta(LatticeConfig(3, 2))) {
    double s = 0.0;
    for (double c : k.components()) s += std::sin(c) * std::sin(c);
    expected = std::min(expected, std::sqrt(4 * 0.8 * 0.8 * s + m * m));
  }
  CHECK(min_abs >= std::abs(m) - 1e-12);
  CHECK(min_abs == doctest::Approx(expected));
}

TEST_CASE("gamma matrix identities") {
  CHECK(gamma_identities_exact());
  const Eigen::Matrix4d g0 = gamma0();
  const Eigen::Matrix4d g5 = gamma5();
  CHECK(((g5 * g0 * g5) + g0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((g5 * g5 - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dirac form at small momenta") {
  const LatticeConfig cfg(3, 2);
  const double kappa = 0.8, m = 0.7;
  int checked = 0;
  for (const auto& k : fermion_momenta(cfg)) {
    bool small = true;
    for (double c : k.components())
      if (std::abs(c) > pi / 2 + 1e-12) small = false;
    if (!small) continue;
    const auto rep = dirac_form_check(cfg, kappa, m, k);
    INFO("residual ", rep.matrix_residual);
    CHECK(rep.matrix_residual <= 1e-10);
    CHECK(rep.eigenpair_residual <= 1e-10);
    CHECK(rep.cross_block <= 1e-10);
    ++checked;
  }
  CHECK(checked == 8);  // (+-pi/4)^3

  // m = 0: eigenvalues are +-2 kappa |sin k|
  const Momentum k0(MomentumGrid::fermion, {0, 0, 0}, 2);
  const auto rep = dirac_form_check(cfg, kappa, 0.0, k0);
  double s = 0.0;
  for (double c : k0.components()) s += std::sin(c) * std::sin(c);
  CHECK(rep.energies[1] == doctest::Approx(2.0 * kappa * std::sqrt(s)));

  // momenta outside the first folded zone or off the fermion grid are rejected
  CHECK_THROWS(dirac_form_check(cfg, kappa, m, momentum_Q(cfg)));
  CHECK_THROWS(dirac_form_check(cfg, kappa, m, Momentum(MomentumGrid::fermion, {1, 0, 0}, 2)));

  // zero momentum is not representable on the anti-periodic grid
  for (const auto& k : fermion_momenta(cfg))
    for (double c : k.components()) CHECK(std::abs(c) > 1e-12);
}

TEST_CASE("chiral selection rule") {
  const LatticeConfig cfg(3, 1);

  SUBCASE("massless two-point functions vanish across chirality sectors") {
    const auto rep = chiral_selection_check(cfg, 0.9, 2.3, 0.0);
    CHECK(rep.max_opposite <= 1e-10);
    CHECK(rep.max_same > 0.1);  // same-sign pairs are unconstrained
  }

  SUBCASE("m = 0.5 breaks the selection rule") {
    const auto rep = chiral_selection_check(cfg, 0.9, 2.3, 0.5);
    CHECK(rep.max_opposite > 1e-3);
  }

  SUBCASE("free-fermion correlator matches the many-body trace") {
    // dual route: <psi^†(k1) psi^(k2)> from the one-particle Fermi function
    // against the full 2^8-dimensional thermal trace
    const double kappa = 0.7, beta = 1.9, m = 0.3;
    auto basis = FockBasis::full(cfg);
    const Operator h = build_free_nu3(basis, kappa, m);
    auto dec = std::make_shared<SpectralDecomposition>(diagonalize(h));
    ModelParams params{kappa, m, 0.0, beta};
    const ThermalState state = make_thermal(dec, params);

    const auto k1 = fermion_momenta(cfg)[0];
    const auto k2 = k1.shifted_by_pi(1).shifted_by_pi(2).shifted_by_pi(3);
    auto mode = [&](const Momentum& k) {
      // psi^(k) = sum_x conj(u_k(x)) psi(x) in the staggered frame
      Operator acc = Operator::identity(basis) * cd(0.0, 0.0);
      const double vol = static_cast<double>(cfg.volume());
      for (std::size_t x = 0; x < cfg.volume(); ++x) {
        const auto c = cfg.coords(x);
        double arg = 0.0;
        const auto comps = k.components();
        for (int i = 0; i < 3; ++i) arg += comps[i] * c[i];
        const double stag = ((c[1] % 2) + 2) % 2 == 0 ? 1.0 : -1.0;
        const cd w = stag * cd(std::cos(arg), -std::sin(arg)) / std::sqrt(vol);
        acc += annihilator(basis, x) * w;
      }
      return acc;
    };
    const cd many_body =
        thermal_expectation(state, mode(k1).adjoint() * mode(k2));

    const Eigen::MatrixXcd M = free_one_particle_matrix(cfg, kappa, m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    const Eigen::VectorXd f =
        (1.0 / (1.0 + (beta * es.eigenvalues().array()).exp())).matrix();
    const Eigen::MatrixXcd F =
        es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
    auto wave = [&](const Momentum& k) {
      Eigen::VectorXcd w(cfg.volume());
      const auto comps = k.components();
      for (std::size_t x = 0; x < cfg.volume(); ++x) {
        const auto c = cfg.coords(x);
        double arg = 0.0;
        for (int i = 0; i < 3; ++i) arg += comps[i] * c[i];
        const double stag = ((c[1] % 2) + 2) % 2 == 0 ? 1.0 : -1.0;
        w(x) = stag * cd(std::cos(arg), std::sin(arg)) /
               std::sqrt(static_cast<double>(cfg.volume()));
      }
      return w;
    };
    const cd one_particle = wave(k2).dot(F * wave(k1));
    CHECK(std::abs(many_body - one_particle) <= 1e-10);
  }
}

TEST_CASE("sgn selection rule") {
  CHECK(sgn_of({1, 1, 0}) == 1);
  CHECK(sgn_of({1, 0, 0}) == -1);
  const auto rep = sgn_selection_rule();
  CHECK(rep.tuples_total == 4096);
  CHECK(rep.conserving == 512);
  CHECK(rep.violations == 0);
  CHECK(rep.ok);
}

TEST_CASE("brillouin-zone integrals") {
  SUBCASE("I3 against the high-resolution oracle") {
    const auto i3 = bz_integral('I', 3);
    CHECK(i3.converged);
    CHECK(std::abs(i3.value - 1.0109240394) <= 1e-3);
    CHECK(i3.error <= 1e-3);
  }

  SUBCASE("J2 and J3 converge under refinement") {
    const auto j2 = bz_integral('J', 2);
    CHECK(j2.converged);
    CHECK(std::abs(j2.value - 1.2857644966) <= 2e-3);
    const auto j3 = bz_integral('J', 3);
    CHECK(j3.converged);
    CHECK(std::abs(j3.value - 0.9106881033) <= 2e-3);
  }

  SUBCASE("I2 is flagged divergent with a monotone ladder") {
    const auto i2 = bz_integral('I', 2);
    CHECK_FALSE(i2.converged);
    for (std::size_t i = 1; i < i2.ladder.size(); ++i)
      CHECK(i2.ladder[i].second > i2.ladder[i - 1].second);
    CHECK_THROWS(i2.require_converged());
  }
}

TEST_CASE("theorem-region certificate") {
  SUBCASE("kappa = 0 at zero temperature gives exactly 1/4") {
    const auto cert = theorem_region(0.0, 1.0, std::nullopt, 2);
    CHECK(cert.lower_bound == 0.25);
    CHECK(cert.positive);
  }

  SUBCASE("ground-state positivity threshold") {
    const auto j3 = bz_integral('J', 3);
    const double threshold = 1.0 / (16.0 * j3.value * j3.value * 3.0);
    const auto below = theorem_region(0.9 * threshold, 1.0, std::nullopt, 3);
    const auto above = theorem_region(1.1 * threshold, 1.0, std::nullopt, 3);
    CHECK(below.positive);
    CHECK_FALSE(above.positive);
    CHECK(below.threshold_kappa_over_g == doctest::Approx(threshold));
  }

  SUBCASE("finite temperature in two dimensions is refused") {
    CHECK_THROWS(theorem_region(0.0, 1.0, 10.0, 2));
    CHECK_NOTHROW(theorem_region(0.0, 1.0, 10.0, 3));
    CHECK_THROWS(theorem_region(0.1, -1.0, std::nullopt, 3));  // g must be positive
    CHECK_THROWS(theorem_region(0.1, 1.0, -2.0, 3));
  }

  SUBCASE("finite-beta bound subtracts the I term") {
    const auto i3 = bz_integral('I', 3);
    const auto j3 = bz_integral('J', 3);
    const double beta = 8.0, g = 2.0, kappa = 0.01;
    const auto cert = theorem_region(kappa, g, beta, 3, i3, j3);
    const double expected =
        0.25 - i3.value / (2.0 * beta * g) - std::sqrt(kappa * 3.0 / g) * j3.value;
    CHECK(cert.lower_bound == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("free hamiltonian gauge equivalence") {
  const LatticeConfig cfg(3, 1);
  auto basis = FockBasis::full(cfg);
  const double kappa = 0.8, m = 0.35;
  const Operator h_free = build_free_nu3(basis, kappa, m);
  const Operator u = build_Ufree(basis);
  const Operator target = build_hamiltonian(basis, ModelParams{kappa, m, 0.0, 1.0});
  CHECK(max_abs_diff(conjugated(u, h_free), target) <= 1e-10);

  // the many-body spectrum is the subset sums of the one-particle kernel
  const Eigen::MatrixXcd kernel = free_one_particle_matrix(cfg, kappa, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(kernel);
  std::vector<double> sums;
  sums.reserve(256);
  for (std::uint32_t s = 0; s < 256; ++s) {
    double total = 0.0;
    for (int k = 0; k < 8; ++k)
      if ((s >> k) & 1u) total += es.eigenvalues()(k);
    sums.push_back(total);
  }
  std::sort(sums.begin(), sums.end());
  const auto many = diagonalize(h_free).all_eigenvalues();
  for (std::size_t i = 0; i < sums.size(); ++i)
    CHECK(many[i] == doctest::Approx(sums[i]).epsilon(1e-10));
}
