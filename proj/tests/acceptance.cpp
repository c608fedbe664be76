// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line each. Exit status is nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "njl/continuum.hpp"
#include "njl/scan.hpp"

using namespace njl;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void criterion(int index, const char* name, bool ok, double seconds, double limit) {
  const bool in_time = seconds <= limit;
  if (!ok || !in_time) ++failures;
  std::printf("[%s] criterion %2d: %-38s (%.2fs / limit %.0fs)%s\n",
              ok && in_time ? "PASS" : "FAIL", index, name, seconds, limit,
              ok ? (in_time ? "" : "  [over time]") : "  [check failed]");
  std::fflush(stdout);
}

struct Draw {
  double g, kappa, beta, m;
};

std::vector<Draw> parameter_draws(std::uint64_t seed, int count, bool massless) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ug(0.3, 2.0);
  std::uniform_real_distribution<double> uk(-1.0, 1.0);
  std::uniform_real_distribution<double> ub(0.5, 4.0);
  std::uniform_real_distribution<double> um(-0.5, 0.5);
  std::vector<Draw> out;
  out.push_back({1.0, 0.0, 2.0, massless ? 0.0 : 0.2});  // include kappa = 0
  for (int i = 1; i < count; ++i)
    out.push_back({ug(rng), uk(rng), ub(rng), massless ? 0.0 : um(rng)});
  return out;
}

ThermalState thermal_for(std::shared_ptr<const FockBasis> basis,
                         const ModelParams& params) {
  const Operator h = build_hamiltonian(basis, params);
  auto dec = std::make_shared<SpectralDecomposition>(diagonalize(h));
  return make_thermal(dec, params);
}

}  // namespace

int main() {
  const LatticeConfig cfg2(2, 1);
  const LatticeConfig cfg3(3, 1);
  auto basis2 = FockBasis::full(cfg2);
  auto basis3 = FockBasis::full(cfg3);

  // 1. operator algebra at 1e-12 on both reference lattices
  {
    Timer t;
    bool ok = true;
    for (const auto& cfg : {cfg2, cfg3}) ok = ok && verify::all_ok(verify::algebra_checks(cfg, 1e-12));
    criterion(1, "operator algebra", ok, t.seconds(), 1.0);
  }

  // 2. symmetry identities at 1e-10 on |Lambda| <= 8
  {
    Timer t;
    bool ok = true;
    const ModelParams params{0.8, 0.3, 1.1, 1.0};
    for (const auto& cfg : {cfg2, cfg3})
      ok = ok && verify::all_ok(verify::symmetry_checks(cfg, params, 20240801, 1e-10));
    criterion(2, "symmetry identities", ok, t.seconds(), 30.0);
  }

  // 3. reflection positivity, 200 seeded even draws
  {
    Timer t;
    const ReflectionMap map(cfg2);
    const auto rep = reflection_positivity_check(basis2, map, 200, 20240801, 1e-10);
    criterion(3, "reflection positivity", rep.all_nonnegative && rep.min_trace >= -1e-10,
              t.seconds(), 30.0);
  }

  // 4. Gaussian domination: 10 h-draws per parameter draw, 10 draws, both lattices
  {
    Timer t;
    bool ok = true;
    for (const auto& cfg : {cfg2, cfg3}) {
      auto basis = FockBasis::full(cfg);
      std::mt19937_64 rng(918273645);
      for (const auto& d : parameter_draws(5551, 10, false)) {
        const ModelParams params{d.kappa, d.m, d.g, d.beta};
        const auto zero = gaussian_domination_check(basis, params, FieldH(cfg), 1e-8);
        ok = ok && std::abs(zero.lhs - zero.rhs) <= 1e-10 * std::max(1.0, zero.rhs);
        for (int i = 0; i < 10; ++i) {
          const auto rep =
              gaussian_domination_check(basis, params, FieldH::random(cfg, rng), 1e-8);
          ok = ok && rep.satisfied;
        }
      }
    }
    criterion(4, "gaussian domination", ok, t.seconds(), 300.0);
  }

  // 5. sum rule on every draw; 6. infrared + C_p window + pair bounds at m = 0
  {
    Timer t5;
    bool sum_ok = true;
    // the sum rule is exact at any mass as well
    for (const auto& cfg : {cfg2, cfg3}) {
      auto basis = FockBasis::full(cfg);
      for (const auto& d : parameter_draws(8883, 3, false)) {
        const ModelParams params{d.kappa, d.m, d.g, d.beta};
        sum_ok = sum_ok &&
                 sum_rule_check(thermal_for(basis, params), basis, 1e-9).satisfied;
      }
    }
    double t6_acc = 0.0;
    bool ir_ok = true;
    for (const auto& cfg : {cfg2, cfg3}) {
      auto basis = FockBasis::full(cfg);
      for (const auto& d : parameter_draws(7771, 6, true)) {
        const ModelParams params{d.kappa, 0.0, d.g, d.beta};
        const ThermalState state = thermal_for(basis, params);
        sum_ok = sum_ok && sum_rule_check(state, basis, 1e-9).satisfied;
        Timer t6;
        const double c_upper = 8.0 * std::abs(params.kappa) * cfg.nu();
        for (const auto& p : density_momenta(cfg)) {
          const double cp = double_commutator(state, basis, p);
          ir_ok = ir_ok && cp >= -1e-10 && cp <= c_upper + 1e-8 * std::max(1.0, c_upper);
          if (p.is_Q()) continue;
          ir_ok = ir_ok && infrared_check(state, basis, p, 1e-8).satisfied;
          const auto dls = dls_check(state, basis, p, 1e-8);
          ir_ok = ir_ok && dls.coth_form.satisfied && dls.linear_form.satisfied;
        }
        t6_acc += t6.seconds();
      }
    }
    criterion(5, "sum rule", sum_ok, t5.seconds() - t6_acc, 60.0);
    criterion(6, "infrared / C_p / pair bounds", ir_ok, t6_acc, 60.0);
  }

  // 7. kappa = 0 oracle against classical enumeration
  {
    Timer t;
    bool ok = true;
    const double g = 1.0;
    const ModelParams params{0.0, 0.0, g, 60.0};
    const Operator h = build_hamiltonian(basis2, params);
    auto dec = std::make_shared<SpectralDecomposition>(diagonalize(h));

    // classical enumeration: minimum of the diagonal over all 2^4 patterns
    double best = 1e300;
    for (std::uint32_t s = 0; s < 16; ++s) {
      double e = 0.0;
      for (std::size_t x = 0; x < cfg2.volume(); ++x)
        for (int mu = 1; mu <= 2; ++mu) {
          const double rx = ((s >> x) & 1u) ? 0.5 : -0.5;
          const std::size_t y = cfg2.neighbor(x, mu);
          const double ry = ((s >> y) & 1u) ? 0.5 : -0.5;
          e += g * rx * ry;
        }
      best = std::min(best, e);
    }
    ok = ok && std::abs(best - (-2.0 * g)) <= 1e-12;
    ok = ok && std::abs(dec->ground_energy() - best) <= 1e-10;

    const ThermalState state = make_thermal(dec, params);
    ok = ok && std::abs(lro_parameter(state, basis2) - 0.5) <= 1e-10;

    const Operator o = build_order_parameter(basis2);
    ok = ok && std::abs(ground_expectation(*dec, o * o) / 16.0 - 0.25) <= 1e-10;
    for (const auto& p : density_momenta(cfg2))
      ok = ok && std::abs(double_commutator(state, basis2, p)) <= 1e-10;
    criterion(7, "kappa = 0 classical oracle", ok, t.seconds(), 30.0);
  }

  // 8. free dispersion and gamma identities
  {
    Timer t;
    bool ok = continuum::gamma_identities_exact();
    for (int L : {1, 2})
      for (double m : {0.0, 0.45})
        ok = ok && continuum::dispersion_check(LatticeConfig(3, L), 1.0, m, 1e-10).ok;
    criterion(8, "free dispersion + gamma algebra", ok, t.seconds(), 30.0);
  }

  // 9. sgn selection rule and chiral two-point selection
  {
    Timer t;
    const auto rule = continuum::sgn_selection_rule();
    bool ok = rule.ok && rule.conserving == 512;
    const auto massless = continuum::chiral_selection_check(cfg3, 0.9, 2.0, 0.0);
    ok = ok && massless.max_opposite <= 1e-10;
    const auto massive = continuum::chiral_selection_check(cfg3, 0.9, 2.0, 0.5);
    ok = ok && massive.max_opposite > 1e-3;
    criterion(9, "chirality selection rules", ok, t.seconds(), 30.0);
  }

  // 10. Brillouin-zone integrals
  {
    Timer t;
    const auto i3 = continuum::bz_integral('I', 3);
    bool ok = i3.converged && std::abs(i3.value - 1.0109240394) <= 1e-3;
    const auto j2 = continuum::bz_integral('J', 2);
    const auto j3 = continuum::bz_integral('J', 3);
    ok = ok && j2.converged && j3.converged;
    const auto i2 = continuum::bz_integral('I', 2);
    ok = ok && !i2.converged;
    criterion(10, "Brillouin-zone integrals", ok, t.seconds(), 120.0);
  }

  // 11. theorem-region certificate
  {
    Timer t;
    bool ok = true;
    const auto cert = continuum::theorem_region(0.0, 1.0, std::nullopt, 2);
    ok = ok && cert.lower_bound == 0.25 && cert.positive;
    bool threw = false;
    try {
      continuum::theorem_region(0.0, 1.0, 5.0, 2);
    } catch (const std::exception&) {
      threw = true;
    }
    ok = ok && threw;
    criterion(11, "theorem-region certificate", ok, t.seconds(), 60.0);
  }

  // 12. physics trend: m_LRO decreases as |kappa|/g grows (sanity, fixed beta)
  {
    Timer t;
    bool ok = true;
    double prev = 1e300;
    for (double kappa : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const ModelParams params{kappa, 0.0, 1.0, 40.0};
      const double m = lro_parameter(thermal_for(basis2, params), basis2);
      ok = ok && m < prev + 1e-12;
      prev = m;
    }
    criterion(12, "m_LRO trend in kappa/g", ok, t.seconds(), 60.0);
  }

  std::printf("%s: %d criterion failure(s)\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
