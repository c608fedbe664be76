#include "njl/verify.hpp"

#include <cmath>
#include <numbers>

#include "njl/continuum.hpp"

namespace njl::verify {

namespace {

int mod_positive(int a, int m) { return ((a % m) + m) % m; }

// kappa sum_x s(x) [psi†(x) psi(x+e_j) + h.c.] for a per-site sign
Operator signed_symmetric_hopping(std::shared_ptr<const FockBasis> basis, double kappa,
                                  int j, const std::vector<double>& site_sign) {
  const auto& cfg = basis->lattice();
  Operator acc = Operator::identity(basis) * cd(0.0, 0.0);
  for (std::size_t x = 0; x < cfg.volume(); ++x) {
    const std::size_t y = cfg.neighbor(x, static_cast<int>(j));
    const Operator hop = creator(basis, x) * annihilator(basis, y);
    const Operator term = hop + hop.adjoint();
    acc += term * cd(kappa * site_sign[x], 0.0);
  }
  return acc;
}

}  // namespace

Check make_check(std::string name, double error, double tol) {
  Check c;
  c.name = std::move(name);
  c.error = error;
  c.tol = tol;
  c.ok = error <= tol;
  return c;
}

std::vector<Check> algebra_checks(const LatticeConfig& cfg, double tol) {
  auto basis = FockBasis::full(cfg);
  const std::size_t volume = cfg.volume();
  std::vector<Check> out;

  // generator words; identities are evaluated by action on every basis state
  using Word = std::vector<FermionFactor>;
  auto a = [](std::size_t x) { return FermionFactor{x, false}; };
  auto ad = [](std::size_t x) { return FermionFactor{x, true}; };

  auto anti_word = [](FermionFactor f, FermionFactor g) {
    FermionPolynomial p;
    p.add_term(1.0, Word{f, g});
    p.add_term(1.0, Word{g, f});
    return p;
  };

  double car_mixed = 0.0, car_same = 0.0, nilpotent = 0.0;
  for (std::size_t x = 0; x < volume; ++x) {
    for (std::size_t y = 0; y < volume; ++y) {
      FermionPolynomial mixed = anti_word(a(x), ad(y));
      if (x == y) mixed.add_term(-1.0, {});
      car_mixed = std::max(car_mixed, action_max_abs(*basis, mixed));
      car_same = std::max(car_same, action_max_abs(*basis, anti_word(a(x), a(y))));
    }
    FermionPolynomial sq;
    sq.add_term(1.0, Word{a(x), a(x)});
    nilpotent = std::max(nilpotent, action_max_abs(*basis, sq));
  }
  out.push_back(make_check("car_psi_psidagger", car_mixed, tol));
  out.push_back(make_check("car_psi_psi", car_same, tol));
  out.push_back(make_check("psi_squared", nilpotent, tol));

  // rho(x) = psi† psi - 1/2: squares to 1/4, commutes across sites, traceless
  double rho_sq = 0.0, rho_comm = 0.0, rho_trace = 0.0;
  for (std::size_t x = 0; x < volume; ++x) {
    // (n - 1/2)^2 - 1/4 = n^2 - n
    FermionPolynomial sq;
    sq.add_term(1.0, Word{ad(x), a(x), ad(x), a(x)});
    sq.add_term(-1.0, Word{ad(x), a(x)});
    rho_sq = std::max(rho_sq, action_max_abs(*basis, sq));
    rho_trace = std::max(rho_trace, std::abs(charge_density(basis, x).trace()));
    for (std::size_t y = x + 1; y < volume; ++y) {
      FermionPolynomial comm;
      comm.add_term(1.0, Word{ad(x), a(x), ad(y), a(y)});
      comm.add_term(-1.0, Word{ad(y), a(y), ad(x), a(x)});
      rho_comm = std::max(rho_comm, action_max_abs(*basis, comm));
    }
  }
  out.push_back(make_check("rho_squared_quarter", rho_sq, tol));
  out.push_back(make_check("rho_commuting", rho_comm, tol));
  out.push_back(make_check("rho_traceless", rho_trace, tol));

  // Majorana pair algebra: xi = psi† + psi, eta = i(psi† - psi)
  auto xi_poly = [&](std::size_t x, cd scale) {
    FermionPolynomial p;
    p.add_term(scale, Word{ad(x)});
    p.add_term(scale, Word{a(x)});
    return p;
  };
  auto eta_poly = [&](std::size_t x, cd scale) {
    FermionPolynomial p;
    p.add_term(scale * cd(0.0, 1.0), Word{ad(x)});
    p.add_term(-scale * cd(0.0, 1.0), Word{a(x)});
    return p;
  };
  auto product = [](const FermionPolynomial& p, const FermionPolynomial& q) {
    FermionPolynomial out;
    for (const auto& tp : p.terms()) {
      for (const auto& tq : q.terms()) {
        Word w = tp.word;
        w.insert(w.end(), tq.word.begin(), tq.word.end());
        out.add_term(tp.coeff * tq.coeff, std::move(w));
      }
    }
    return out;
  };
  auto add = [](FermionPolynomial p, const FermionPolynomial& q) {
    for (const auto& t : q.terms()) p.add_term(t.coeff, t.word);
    return p;
  };

  double maj_sq = 0.0, maj_cross = 0.0, maj_pair = 0.0, reconstruct = 0.0,
         hermitian = 0.0;
  for (std::size_t x = 0; x < volume; ++x) {
    hermitian = std::max({hermitian,
                          majorana(basis, x, MajoranaKind::xi).hermiticity_error(),
                          majorana(basis, x, MajoranaKind::eta).hermiticity_error()});
    for (bool use_eta : {false, true}) {
      const FermionPolynomial gen = use_eta ? eta_poly(x, 1.0) : xi_poly(x, 1.0);
      FermionPolynomial sq = product(gen, gen);
      sq.add_term(-1.0, {});
      maj_sq = std::max(maj_sq, action_max_abs(*basis, sq));
    }
    for (std::size_t y = 0; y < volume; ++y) {
      maj_cross = std::max(
          maj_cross, action_max_abs(*basis, add(product(xi_poly(x, 1.0), eta_poly(y, 1.0)),
                                                product(eta_poly(y, 1.0), xi_poly(x, 1.0)))));
      if (x == y) continue;
      maj_pair = std::max(
          maj_pair, action_max_abs(*basis, add(product(xi_poly(x, 1.0), xi_poly(y, 1.0)),
                                               product(xi_poly(y, 1.0), xi_poly(x, 1.0)))));
      maj_pair = std::max(
          maj_pair, action_max_abs(*basis, add(product(eta_poly(x, 1.0), eta_poly(y, 1.0)),
                                               product(eta_poly(y, 1.0), eta_poly(x, 1.0)))));
    }
    // psi = (xi + i eta)/2
    FermionPolynomial rebuilt = add(xi_poly(x, 0.5), eta_poly(x, cd(0.0, 0.5)));
    rebuilt.add_term(-1.0, Word{a(x)});
    reconstruct = std::max(reconstruct, action_max_abs(*basis, rebuilt));
  }
  out.push_back(make_check("majorana_hermitian", hermitian, tol));
  out.push_back(make_check("majorana_square_one", maj_sq, tol));
  out.push_back(make_check("majorana_xi_eta", maj_cross, tol));
  out.push_back(make_check("majorana_offsite", maj_pair, tol));
  out.push_back(make_check("psi_from_majorana", reconstruct, tol));

  ModelParams params{0.7, 0.3, 1.1, 1.0};
  const Operator h = build_hamiltonian(basis, params);
  out.push_back(make_check("hamiltonian_hermitian", h.hermiticity_error(), tol));
  out.push_back(
      make_check("hamiltonian_number", commutator(h, total_number(basis)).max_abs(), tol));
  const Operator h0 = build_deformed(basis, params, FieldH(cfg));
  out.push_back(make_check("deformed_matches_at_zero_field", max_abs_diff(h0, h), 0.0));
  return out;
}

std::vector<Check> symmetry_checks(const LatticeConfig& cfg, const ModelParams& params,
                                   std::uint64_t seed, double tol) {
  auto basis = FockBasis::full(cfg);
  const std::size_t volume = cfg.volume();
  const int nu = cfg.nu();
  const int half = cfg.half_length();
  std::vector<Check> out;

  std::vector<Operator> psi, psid, rho;
  for (std::size_t x = 0; x < volume; ++x) {
    psi.push_back(annihilator(basis, x));
    psid.push_back(creator(basis, x));
    rho.push_back(charge_density(basis, x));
  }
  const Operator one = Operator::identity(basis);

  const Operator u_ph = build_particle_hole(basis);
  const Operator u1 = build_U1(basis);
  const Operator u_odd = build_Uodd(basis);
  const Operator u_t1 = build_Utilde1(basis);

  std::vector<std::pair<std::string, const Operator*>> unitaries = {
      {"U_PH", &u_ph}, {"U_1", &u1}, {"U_odd", &u_odd}, {"U~_1", &u_t1}};
  for (const auto& [name, u] : unitaries)
    out.push_back(make_check("unitarity_" + name, max_abs_diff(u->adjoint() * (*u), one), 1e-12));

  double ph_psi = 0.0, ph_rho = 0.0;
  for (std::size_t x = 0; x < volume; ++x) {
    ph_psi = std::max(ph_psi, max_abs_diff(conjugated(u_ph, psi[x]), psid[x]));
    ph_rho = std::max(ph_rho, max_abs_diff(conjugated(u_ph, rho[x]), -rho[x]));
  }
  out.push_back(make_check("particle_hole_psi", ph_psi, tol));
  out.push_back(make_check("particle_hole_rho", ph_rho, tol));

  ModelParams massless = params;
  massless.m = 0.0;
  const Operator h_massless = build_hamiltonian(basis, massless);
  out.push_back(make_check("particle_hole_hamiltonian",
                           max_abs_diff(conjugated(u_ph, h_massless), h_massless), tol));

  // m = 0 consequence: every <rho(x)> vanishes at any beta
  {
    auto dec = std::make_shared<SpectralDecomposition>(diagonalize(h_massless));
    const ThermalState state = make_thermal(dec, massless);
    double worst = 0.0;
    for (std::size_t x = 0; x < volume; ++x)
      worst = std::max(worst, std::abs(thermal_expectation(state, rho[x])));
    out.push_back(make_check("half_filling_density", worst, tol));
  }

  const Operator hk1 = build_hopping_direction(basis, params.kappa, 1);
  out.push_back(make_check("u1_fixes_direction_one",
                           max_abs_diff(conjugated(u1, hk1), hk1), tol));

  // U_1† H_K,j U_1 for j >= 2: symmetric hopping with sign
  // (-1)^{x_1 + ... + x_j}, flipped on the boundary slice x_j = L
  for (int j = 2; j <= nu; ++j) {
    const Operator hkj = build_hopping_direction(basis, params.kappa, j);
    std::vector<double> sign(volume);
    for (std::size_t x = 0; x < volume; ++x) {
      const auto c = cfg.coords(x);
      int s = 0;
      for (int i = 0; i < j; ++i) s += c[i];
      double v = mod_positive(s, 2) == 0 ? 1.0 : -1.0;
      if (c[j - 1] == half) v = -v;
      sign[x] = v;
    }
    const Operator rhs = signed_symmetric_hopping(basis, params.kappa, j, sign);
    out.push_back(make_check("u1_direction_" + std::to_string(j),
                             max_abs_diff(conjugated(u1, hkj), rhs), tol));
  }

  double uodd_psi = 0.0;
  for (std::size_t x = 0; x < volume; ++x) {
    const bool odd = parity_sign(cfg, x) < 0;
    const Operator expected = odd ? psid[x] : psi[x];
    uodd_psi = std::max(uodd_psi, max_abs_diff(conjugated(u_odd, psi[x]), expected));
  }
  out.push_back(make_check("u_odd_psi", uodd_psi, tol));

  // U~_1† H_K,1 U~_1: Majorana pair form with a boundary sign flip
  {
    const Operator rhs = [&] {
      Operator acc = one * cd(0.0, 0.0);
      for (std::size_t x = 0; x < volume; ++x) {
        const auto c = cfg.coords(x);
        const std::size_t y = cfg.neighbor(x, 1);
        const double bc = c[0] == half ? -1.0 : 1.0;
        const Operator xi_x = majorana(basis, x, MajoranaKind::xi);
        const Operator xi_y = majorana(basis, y, MajoranaKind::xi);
        const Operator eta_x = majorana(basis, x, MajoranaKind::eta);
        const Operator eta_y = majorana(basis, y, MajoranaKind::eta);
        acc += (xi_x * xi_y - eta_x * eta_y) * cd(0.0, 0.5 * params.kappa * bc);
      }
      return acc;
    }();
    out.push_back(make_check("tilde_direction_1",
                             max_abs_diff(conjugated(u_t1, hk1), rhs), tol));
  }

  // U~_1† H_K,j U~_1 for j >= 2: pairing terms with sign
  // (-1)^{x_{j+1} + ... + x_nu}, flipped on x_j = L
  for (int j = 2; j <= nu; ++j) {
    const Operator hkj = build_hopping_direction(basis, params.kappa, j);
    Operator rhs = one * cd(0.0, 0.0);
    for (std::size_t x = 0; x < volume; ++x) {
      const auto c = cfg.coords(x);
      const std::size_t y = cfg.neighbor(x, j);
      int s = 0;
      for (int i = j; i < nu; ++i) s += c[i];
      double sign = mod_positive(s, 2) == 0 ? 1.0 : -1.0;
      if (c[j - 1] == half) sign = -sign;
      const Operator pair = psid[x] * psid[y];
      rhs += (pair + pair.adjoint()) * cd(params.kappa * sign, 0.0);
    }
    out.push_back(make_check("tilde_direction_" + std::to_string(j),
                             max_abs_diff(conjugated(u_t1, hkj), rhs), tol));
  }

  // U~_1† H_int(h) U~_1 = (g/2) sum [rho(x) - rho(x+e) + h]^2 - g nu |Lambda| / 4
  {
    std::mt19937_64 rng(seed);
    FieldH h = FieldH::random(cfg, rng);
    ModelParams int_only = params;
    int_only.kappa = 0.0;
    int_only.m = 0.0;
    const Operator lhs = conjugated(u_t1, build_deformed(basis, int_only, h));
    OperatorBuilder rhs_b(basis);
    for (std::size_t i = 0; i < basis->dim(); ++i) {
      const std::uint32_t s = basis->state(i);
      double v = 0.0;
      for (std::size_t x = 0; x < volume; ++x) {
        for (int mu = 1; mu <= nu; ++mu) {
          const std::size_t y = cfg.neighbor(x, mu);
          const double rx = ((s >> x) & 1u) ? 0.5 : -0.5;
          const double ry = ((s >> y) & 1u) ? 0.5 : -0.5;
          const double d = rx - ry + h.at(mu, x);
          v += 0.5 * params.g * d * d;
        }
      }
      v -= params.g * nu * static_cast<double>(volume) / 4.0;
      rhs_b.add(i, i, v);
    }
    out.push_back(
        make_check("tilde_interaction", max_abs_diff(lhs, rhs_b.build()), tol));
  }

  // U~_1† O U~_1 = sum_x rho(x)
  {
    Operator rhs = one * cd(0.0, 0.0);
    for (std::size_t x = 0; x < volume; ++x) rhs += rho[x];
    out.push_back(make_check(
        "tilde_order_parameter",
        max_abs_diff(conjugated(u_t1, build_order_parameter(basis)), rhs), tol));
  }

  // gauge moves: conjugated hopping carries the relabeled phase pattern
  const Operator hk = build_hopping(basis, params.kappa);
  for (int j = 2; j <= nu; ++j) {
    const Operator u_ha = build_gauge_move(basis, j);
    out.push_back(make_check("unitarity_U_HA_" + std::to_string(j),
                             max_abs_diff(u_ha.adjoint() * u_ha, one), 1e-12));
    Operator rhs = one * cd(0.0, 0.0);
    for (std::size_t x = 0; x < volume; ++x) {
      const auto c = cfg.coords(x);
      for (int mu = 1; mu <= nu; ++mu) {
        int theta;
        if (mu == j) {
          theta = c[mu - 1] == half ? 1 : 0;
        } else if (mu > j) {
          theta = staggered_exponent(cfg, c, mu);
        } else {
          int s = c[j - 1];
          for (int i = 0; i < mu - 1; ++i) s += c[i];
          if (c[mu - 1] == half) s += 1;
          theta = mod_positive(s, 2);
        }
        const double sign = theta == 0 ? 1.0 : -1.0;
        const std::size_t y = cfg.neighbor(x, mu);
        const Operator hop = psid[x] * psi[y] - psid[y] * psi[x];
        rhs += hop * cd(0.0, params.kappa * sign);
      }
    }
    out.push_back(make_check("gauge_move_" + std::to_string(j),
                             max_abs_diff(conjugated(u_ha, hk), rhs), tol));
  }

  // boundary move: diagonal with unit entries, squares to the identity
  {
    const Operator u_bc = build_boundary_move(basis, 1, 1);
    const DenseMatrix m = u_bc.dense();
    double offdiag = 0.0, unit = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        if (i == k)
          unit = std::max(unit, std::abs(std::abs(m(i, k)) - 1.0) +
                                    std::abs(m(i, k).imag()));
        else
          offdiag = std::max(offdiag, std::abs(m(i, k)));
      }
    }
    out.push_back(make_check("boundary_move_diagonal", std::max(offdiag, unit), tol));
    out.push_back(make_check("boundary_move_squares", max_abs_diff(u_bc * u_bc, one), tol));
  }

  // reflection: generator images, antilinearity, Majorana signs, involution
  {
    const ReflectionMap map(cfg);
    double gen = 0.0, anti = 0.0, maj = 0.0, invol = 0.0;
    for (std::size_t x : map.minus_sites()) {
      FermionPolynomial p;
      p.add_term(1.0, {{x, false}});
      const auto rp = reflect_polynomial(map, p);
      gen = std::max(gen, max_abs_diff(to_operator(basis, rp), psi[map.reflect(x)]));

      FermionPolynomial scaled;
      scaled.add_term(cd(0.3, 0.7), {{x, false}});
      anti = std::max(anti, max_abs_diff(to_operator(basis, reflect_polynomial(map, scaled)),
                                         psi[map.reflect(x)] * cd(0.3, -0.7)));

      // eta = i psi† - i psi; theta(eta)(x) = -eta(r(x))
      FermionPolynomial eta_poly;
      eta_poly.add_term(cd(0.0, 1.0), {{x, true}});
      eta_poly.add_term(cd(0.0, -1.0), {{x, false}});
      maj = std::max(maj, max_abs_diff(to_operator(basis, reflect_polynomial(map, eta_poly)),
                                       -majorana(basis, map.reflect(x), MajoranaKind::eta)));

      FermionPolynomial word;
      word.add_term(1.25, {{x, true}, {x, false}});
      const auto back = reflect_polynomial(map, reflect_polynomial(map, word));
      invol = std::max(invol, max_abs_diff(to_operator(basis, back), to_operator(basis, word)));
    }
    out.push_back(make_check("reflection_generators", gen, tol));
    out.push_back(make_check("reflection_antilinear", anti, tol));
    out.push_back(make_check("reflection_majorana_eta", maj, tol));
    out.push_back(make_check("reflection_involution", invol, tol));
  }

  if (nu == 3) {
    const Operator u_free = build_Ufree(basis);
    out.push_back(make_check("unitarity_U_free",
                             max_abs_diff(u_free.adjoint() * u_free, one), 1e-12));
    const Operator h_free = build_free_nu3(basis, params.kappa, params.m);
    ModelParams free_params = params;
    free_params.g = 0.0;
    const Operator target = build_hamiltonian(basis, free_params);
    out.push_back(make_check("free_gauge_equivalence",
                             max_abs_diff(conjugated(u_free, h_free), target), tol));
  }
  return out;
}

std::vector<Check> continuum_checks(const LatticeConfig& cfg, double kappa, double m,
                                    double beta, double tol) {
  using namespace njl::continuum;
  std::vector<Check> out;
  if (cfg.nu() == 3) {
    const auto disp = dispersion_check(cfg, kappa, m, tol);
    out.push_back(make_check("free_dispersion", disp.max_abs_diff, tol));
    out.push_back(make_check("gamma_identities", gamma_identities_exact() ? 0.0 : 1.0, 0.0));

    double dirac = 0.0, cross = 0.0;
    for (const auto& k : fermion_momenta(cfg)) {
      bool small = true;
      for (double c : k.components())
        if (std::abs(c) > std::numbers::pi / 2 + 1e-12) small = false;
      if (!small) continue;
      const auto rep = dirac_form_check(cfg, kappa, m, k);
      dirac = std::max({dirac, rep.matrix_residual, rep.eigenpair_residual});
      cross = std::max(cross, rep.cross_block);
    }
    out.push_back(make_check("dirac_form", dirac, tol));
    out.push_back(make_check("dirac_up_down_decoupling", cross, tol));

    const auto massless = chiral_selection_check(cfg, kappa, beta, 0.0);
    out.push_back(make_check("chiral_selection_massless", massless.max_opposite, tol));
    const auto massive = chiral_selection_check(cfg, kappa, beta, 0.5);
    out.push_back(make_check("chiral_selection_broken_at_half",
                             massive.max_opposite > 100 * tol ? 0.0 : 1.0, 0.0));
  }

  const auto rule = sgn_selection_rule();
  out.push_back(make_check("sgn_selection_rule", rule.ok ? 0.0 : 1.0, 0.0));

  if (cfg.nu() == 3) {
    const auto i3 = bz_integral('I', 3);
    out.push_back(make_check("integral_I3", std::abs(i3.value - 1.0109240394), 1e-3));
    out.push_back(make_check("integral_I3_converged", i3.converged ? 0.0 : 1.0, 0.0));
  }
  const auto j = bz_integral('J', cfg.nu());
  out.push_back(make_check("integral_J_converges", j.converged ? 0.0 : 1.0, 0.0));
  const auto i2 = bz_integral('I', 2);
  out.push_back(make_check("integral_I2_divergence_flag", i2.converged ? 1.0 : 0.0, 0.0));
  return out;
}

std::vector<BoundReport> bound_battery(std::shared_ptr<const FockBasis> basis,
                                       const ModelParams& params, std::uint64_t seed,
                                       int gaussian_draws, double tol) {
  const auto& cfg = basis->lattice();
  std::vector<BoundReport> out;

  const Operator h = build_hamiltonian(basis, params);
  auto dec = std::make_shared<SpectralDecomposition>(diagonalize(h));
  const ThermalState state = make_thermal(dec, params);

  out.push_back(sum_rule_check(state, basis, 1e-9));

  {
    BoundReport zero = gaussian_domination_check(basis, params, FieldH(cfg), tol);
    zero.name = "gaussian_domination_equality";
    zero.satisfied = std::abs(zero.lhs - zero.rhs) <=
                     1e-10 * std::max(1.0, std::abs(zero.rhs));
    zero.note = "two-sided at h = 0";
    out.push_back(zero);
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < gaussian_draws; ++i) {
    BoundReport r = gaussian_domination_check(basis, params, FieldH::random(cfg, rng), tol);
    r.name = "gaussian_domination_draw_" + std::to_string(i);
    out.push_back(r);
  }

  if (params.m == 0.0 && params.g > 0.0) {
    const double c_upper = 8.0 * std::abs(params.kappa) * cfg.nu();
    for (const auto& p : density_momenta(cfg)) {
      const double cp = double_commutator(state, basis, p);
      out.push_back(make_bound_report("c_p_nonnegative", -cp, 0.0, 1e-10));
      out.push_back(make_bound_report("c_p_upper", cp, c_upper, tol,
                                      "prefactor 8|kappa|nu"));
      if (p.is_Q()) continue;
      out.push_back(infrared_check(state, basis, p, tol));
      const auto dls = dls_check(state, basis, p, tol);
      out.push_back(dls.coth_form);
      out.push_back(dls.linear_form);
    }
    const auto chain = lro_chain(state, basis, tol);
    out.push_back(make_bound_report("lro_chain", chain.sym_sum_avg,
                                    chain.rhs_p_sum + chain.q_term, tol,
                                    "certificate lower bound " +
                                        std::to_string(chain.mlro_sq_lower)));
  }
  return out;
}

bool all_ok(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

bool all_ok(const std::vector<BoundReport>& reports) {
  for (const auto& r : reports)
    if (!r.satisfied) return false;
  return true;
}

}  // namespace njl::verify
