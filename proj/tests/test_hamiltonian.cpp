#include <doctest.h>

#include <bit>
#include <random>

#include "njl/hamiltonian.hpp"
#include "njl/spectra.hpp"

using namespace njl;

namespace {

// classical oracle: diagonal energies at kappa = 0 by exhaustive enumeration
double classical_energy(const LatticeConfig& cfg, std::uint32_t s, double g, double m) {
  double e = 0.0;
  for (std::size_t x = 0; x < cfg.volume(); ++x) {
    const double rx = ((s >> x) & 1u) ? 0.5 : -0.5;
    e += m * parity_sign(cfg, x) * rx;
    for (int mu = 1; mu <= cfg.nu(); ++mu) {
      const std::size_t y = cfg.neighbor(x, mu);
      const double ry = ((s >> y) & 1u) ? 0.5 : -0.5;
      e += g * rx * ry;
    }
  }
  return e;
}

}  // namespace

TEST_CASE("classical ground state at kappa = 0") {
  const LatticeConfig cfg(2, 1);
  auto basis = FockBasis::full(cfg);
  const double g = 1.3;
  ModelParams params{0.0, 0.0, g, 1.0};
  const Operator h = build_hamiltonian(basis, params);

  // exhaustive enumeration over all 2^4 occupation patterns
  double best = 1e300;
  int degeneracy = 0;
  for (std::uint32_t s = 0; s < 16; ++s) {
    const double e = classical_energy(cfg, s, g, 0.0);
    if (e < best - 1e-12) {
      best = e;
      degeneracy = 1;
    } else if (std::abs(e - best) <= 1e-12) {
      ++degeneracy;
    }
  }
  CHECK(best == doctest::Approx(-2.0 * g).epsilon(1e-14));
  CHECK(degeneracy == 2);  // the two alternating patterns

  const auto dec = diagonalize(h);
  CHECK(dec.ground_energy() == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("hamiltonian structure") {
  for (const LatticeConfig cfg : {LatticeConfig(2, 1), LatticeConfig(3, 1)}) {
    auto basis = FockBasis::full(cfg);
    ModelParams params{0.8, 0.25, 1.1, 1.0};
    const Operator h = build_hamiltonian(basis, params);
    CHECK(h.hermiticity_error() <= 1e-12);
    CHECK(commutator(h, total_number(basis)).max_abs() <= 1e-12);
  }
  CHECK_THROWS(build_hamiltonian(FockBasis::full(LatticeConfig(2, 1)),
                                 ModelParams{1.0, 0.0, -0.5, 1.0}));
}

TEST_CASE("order parameter") {
  const LatticeConfig cfg(2, 1);
  auto basis = FockBasis::full(cfg);
  const Operator o = build_order_parameter(basis);
  CHECK(std::abs(o.trace()) == 0.0);

  // the alternating pattern is an eigenstate at eigenvalue +-|Lambda|/2
  std::uint32_t neel = 0;
  for (std::size_t x = 0; x < cfg.volume(); ++x)
    if (parity_sign(cfg, x) > 0) neel |= std::uint32_t{1} << x;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis->dim());
  v(neel) = 1.0;
  const Eigen::VectorXcd w = o.apply(v);
  CHECK(std::abs(w(neel) - cd(2.0, 0.0)) < 1e-14);  // |Lambda|/2 = 2

  // eigenvalues live in [-|Lambda|/2, |Lambda|/2]
  const auto dec = diagonalize(o);
  const auto evals = dec.all_eigenvalues();
  CHECK(evals.front() == doctest::Approx(-2.0));
  CHECK(evals.back() == doctest::Approx(2.0));
}

TEST_CASE("deformed hamiltonian") {
  const LatticeConfig cfg(2, 1);
  auto basis = FockBasis::full(cfg);
  ModelParams params{0.6, 0.2, 0.9, 1.0};

  SUBCASE("zero field reproduces the plain hamiltonian exactly") {
    const Operator a = build_hamiltonian(basis, params);
    const Operator b = build_deformed(basis, params, FieldH(cfg));
    CHECK(max_abs_diff(a, b) == 0.0);
  }

  SUBCASE("single-bond field shifts classical energies by the quadratic form") {
    ModelParams classical{0.0, 0.0, 1.4, 1.0};
    FieldH h(cfg);
    h.at(1, 2) = 0.7;
    const Operator hd = build_deformed(basis, classical, h);
    const Operator h0 = build_hamiltonian(basis, classical);
    // per state: (g/2)[(rho_x + rho_y + p h)^2 - (rho_x + rho_y)^2]
    const std::size_t y = cfg.neighbor(2, 1);
    const int par = parity_sign(cfg, 2);
    const Eigen::MatrixXcd d = hd.dense() - h0.dense();
    for (std::size_t s = 0; s < 16; ++s) {
      const double rx = ((s >> 2) & 1u) ? 0.5 : -0.5;
      const double ry = ((s >> y) & 1u) ? 0.5 : -0.5;
      const double v = par * 0.7;
      const double expected =
          0.5 * classical.g * ((rx + ry + v) * (rx + ry + v) - (rx + ry) * (rx + ry));
      CHECK(std::abs(d(s, s) - cd(expected, 0.0)) < 1e-12);
    }
  }

  SUBCASE("hermitian and number conserving with random field") {
    std::mt19937_64 rng(7);
    const FieldH h = FieldH::random(cfg, rng);
    const Operator hd = build_deformed(basis, params, h);
    CHECK(hd.hermiticity_error() <= 1e-12);
    CHECK(commutator(hd, total_number(basis)).max_abs() <= 1e-12);
  }
}

TEST_CASE("free hamiltonian input checks") {
  CHECK_THROWS(build_free_nu3(FockBasis::full(LatticeConfig(2, 1)), 1.0, 0.0));
  auto basis = FockBasis::full(LatticeConfig(3, 1));
  const Operator h = build_free_nu3(basis, 0.9, 0.4);
  CHECK(h.hermiticity_error() <= 1e-12);
}

TEST_CASE("one-particle spectrum symmetric at m = 0 and subset sums") {
  const LatticeConfig cfg(2, 1);
  const Eigen::MatrixXcd m = one_particle_hopping(cfg, 0.7);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const Eigen::VectorXd e = es.eigenvalues();
  for (Eigen::Index i = 0; i < e.size(); ++i)
    CHECK(e(i) == doctest::Approx(-e(e.size() - 1 - i)).epsilon(1e-12));

  // many-body spectrum at g = 0, m = 0 is all partial sums of one-particle energies
  auto basis = FockBasis::full(cfg);
  const auto dec = diagonalize(build_hamiltonian(basis, ModelParams{0.7, 0.0, 0.0, 1.0}));
  auto many = dec.all_eigenvalues();
  std::vector<double> sums;
  for (std::uint32_t s = 0; s < 16; ++s) {
    double total = 0.0;
    for (int k = 0; k < 4; ++k)
      if ((s >> k) & 1u) total += e(k);
    sums.push_back(total);
  }
  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 0; i < sums.size(); ++i)
    CHECK(many[i] == doctest::Approx(sums[i]).epsilon(1e-10));
}

TEST_CASE("sparse storage at the 16-site cap") {
  const LatticeConfig cfg(2, 2);  // 16 sites, full dimension 2^16
  auto basis = FockBasis::full(cfg);
  CHECK(basis->dim() == 65536);

  const ModelParams params{0.7, 0.0, 0.0, 1.0};
  const Operator h = build_hamiltonian(basis, params);
  CHECK_FALSE(h.stored_dense());
  CHECK(h.hermiticity_error() <= 1e-12);
  CHECK(commutator(h, total_number(basis)).max_abs() <= 1e-12);

  // one-particle sector of the big operator equals the hopping kernel spectrum
  auto one = FockBasis::number_sector(cfg, 1);
  const Operator h1 = build_hamiltonian(one, params);
  CHECK(h1.stored_dense());  // 16-dimensional block
  const auto sector = diagonalize(h1).all_eigenvalues();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(one_particle_hopping(cfg, 0.7));
  for (std::size_t i = 0; i < sector.size(); ++i)
    CHECK(sector[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-12));
}

TEST_CASE("general interaction") {
  const LatticeConfig cfg(2, 1);
  auto basis = FockBasis::full(cfg);
  const auto momenta = density_momenta(cfg);

  SUBCASE("zero ghat gives the zero operator") {
    const Operator z = build_general_interaction(basis, std::vector<double>(4, 0.0));
    CHECK(z.max_abs() == 0.0);
  }

  SUBCASE("cosine ghat reproduces the nearest-neighbour density bilinear") {
    std::vector<double> ghat;
    for (const auto& p : momenta) {
      double v = 0.0;
      for (double c : p.components()) v += std::cos(c);
      ghat.push_back(v);
    }
    const Operator built = build_general_interaction(basis, ghat);
    // expand: the staggered factor is -1 on nearest neighbours, so the result
    // is minus sum_{x,mu} n(x) n(x+e_mu)
    Operator expected = Operator::identity(basis) * cd(0.0, 0.0);
    for (std::size_t x = 0; x < cfg.volume(); ++x)
      for (int mu = 1; mu <= 2; ++mu)
        expected += number_op(basis, x) * number_op(basis, cfg.neighbor(x, mu));
    CHECK(max_abs_diff(built, -expected) <= 1e-12);
  }

  SUBCASE("hermitian for random real ghat") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> dist;
    std::vector<double> ghat;
    for (std::size_t i = 0; i < momenta.size(); ++i) ghat.push_back(dist(rng));
    CHECK(build_general_interaction(basis, ghat).hermiticity_error() <= 1e-12);
  }

  SUBCASE("support validation flag") {
    std::vector<double> ghat(4, 0.0);
    ghat[3] = 1.0;  // some nonzero entry away from k = 0
    bool found_nonzero_at_large_k = false;
    for (std::size_t i = 0; i < momenta.size(); ++i) {
      if (ghat[i] == 0.0) continue;
      for (double c : momenta[i].components())
        if (std::abs(c) > 0.1) found_nonzero_at_large_k = true;
    }
    if (found_nonzero_at_large_k)
      CHECK_THROWS(build_general_interaction(basis, ghat, true, 0.1));
    CHECK_NOTHROW(build_general_interaction(basis, ghat, false));
  }

  CHECK_THROWS(build_general_interaction(basis, std::vector<double>(3, 1.0)));
}
