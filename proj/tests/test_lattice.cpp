#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "njl/lattice.hpp"

using namespace njl;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("config invariants") {
  CHECK_THROWS(LatticeConfig(1, 1));
  CHECK_THROWS(LatticeConfig(2, 0));
  const LatticeConfig cfg(2, 2);
  CHECK(cfg.volume() == 16);
  CHECK(LatticeConfig(3, 1).volume() == 8);
}

TEST_CASE("flat index round trip and neighbours") {
  const LatticeConfig cfg(3, 2);
  for (std::size_t i = 0; i < cfg.volume(); ++i) {
    const auto c = cfg.coords(i);
    CHECK(cfg.flat_index(c) == i);
  }
  // every site has exactly 2 nu distinct neighbours
  for (std::size_t i = 0; i < cfg.volume(); ++i) {
    std::set<std::size_t> nb;
    for (int mu = 1; mu <= cfg.nu(); ++mu) {
      nb.insert(cfg.neighbor(i, mu, +1));
      nb.insert(cfg.neighbor(i, mu, -1));
    }
    CHECK(nb.size() == 6);
    CHECK(nb.count(i) == 0);
  }
  // periodic wrap: stepping 2L times returns home
  for (int mu = 1; mu <= cfg.nu(); ++mu) {
    std::size_t x = 5;
    for (int s = 0; s < cfg.side(); ++s) x = cfg.neighbor(x, mu);
    CHECK(x == 5);
  }
}

TEST_CASE("staggered phases") {
  const LatticeConfig cfg2(2, 1);
  CHECK(staggered_phase(cfg2, std::vector<int>{0, 0}, 1) == 1);
  CHECK(staggered_phase(cfg2, std::vector<int>{1, 0}, 1) == -1);  // boundary x1 = L
  const LatticeConfig cfg3(3, 2);
  CHECK(staggered_phase(cfg3, std::vector<int>{1, 1, 0}, 3) == 1);  // theta3 = x1 + x2
  CHECK(staggered_phase(cfg3, std::vector<int>{1, 0, 0}, 2) == -1);
  CHECK_THROWS(staggered_phase(cfg2, std::vector<int>{0, 0}, 3));

  // matches the piecewise definition recomputed from coordinates
  for (std::size_t i = 0; i < cfg3.volume(); ++i) {
    const auto c = cfg3.coords(i);
    for (int mu = 1; mu <= 3; ++mu) {
      int expo = 0;
      for (int k = 0; k < mu - 1; ++k) expo += c[k];
      if (c[mu - 1] == cfg3.half_length()) expo += 1;
      const int expected = ((expo % 2) + 2) % 2 == 0 ? 1 : -1;
      CHECK(staggered_phase(cfg3, i, mu) == expected);
    }
  }
}

TEST_CASE("parity") {
  CHECK(parity_sign(std::vector<int>{0, 0}) == 1);
  CHECK(parity_sign(std::vector<int>{1, 0}) == -1);
  CHECK(parity_sign(std::vector<int>{1, 1, 1}) == -1);
  CHECK(parity_sign(std::vector<int>{-1, 0}) == -1);

  const LatticeConfig cfg(3, 2);
  int total = 0;
  for (std::size_t i = 0; i < cfg.volume(); ++i) total += parity_sign(cfg, i);
  CHECK(total == 0);  // equal sublattice sizes
}

TEST_CASE("momentum grids") {
  const LatticeConfig cfg(2, 1);
  const auto density = density_momenta(cfg);
  const auto fermion = fermion_momenta(cfg);
  CHECK(density.size() == 4);
  CHECK(fermion.size() == 4);

  std::set<std::pair<double, double>> dvals;
  for (const auto& p : density) {
    const auto c = p.components();
    dvals.insert({std::round(c[0] * 1e12), std::round(c[1] * 1e12)});
  }
  // {0, pi}^2
  CHECK(dvals.count({0.0, 0.0}) == 1);
  CHECK(dvals.count({std::round(pi * 1e12), std::round(pi * 1e12)}) == 1);

  for (const auto& p : fermion)
    for (double c : p.components()) CHECK(std::abs(std::abs(c) - pi / 2) < 1e-14);

  // closed under negation; Q present
  bool has_q = false;
  for (const auto& p : density) {
    const auto neg = p.negated();
    bool found = false;
    for (const auto& q : density)
      if (q == neg) found = true;
    CHECK(found);
    if (p.is_Q()) has_q = true;
  }
  CHECK(has_q);

  // anti-periodicity: exp(i k 2L) = -1
  const LatticeConfig big(2, 3);
  for (const auto& p : fermion_momenta(big))
    for (double c : p.components())
      CHECK(std::abs(std::cos(c * 2 * big.half_length()) + 1.0) < 1e-12);
}

TEST_CASE("dispersion") {
  const LatticeConfig cfg3(3, 1);
  CHECK(dispersion(std::vector<double>{0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(dispersion(momentum_Q(cfg3)) == doctest::Approx(3.0));
  CHECK(dispersion(std::vector<double>{pi, 0.0}) == doctest::Approx(1.0));

  // E_{p+Q} >= 0 with equality only at p = Q
  const LatticeConfig cfg(2, 2);
  for (const auto& p : density_momenta(cfg)) {
    const double e = dispersion(p.shifted_by_Q());
    if (p.is_Q())
      CHECK(e == doctest::Approx(0.0));
    else
      CHECK(e > 1e-12);
  }
}

TEST_CASE("momentum arithmetic wraps onto the grid") {
  const LatticeConfig cfg(2, 2);
  const auto q = momentum_Q(cfg);
  const auto twice = q.shifted_by_Q();
  for (double c : twice.components()) CHECK(std::abs(c) < 1e-14);  // 2Q = 0
  const Momentum p(MomentumGrid::density, {1, -1}, 2);
  const auto pq = p.shifted_by_Q();
  CHECK(pq.labels()[0] == -1);  // 1 + 2 = 3 wraps to -1 in (-2, 2]
  CHECK(pq.labels()[1] == 1);
}
