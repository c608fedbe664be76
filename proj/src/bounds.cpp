#include "njl/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace njl {

namespace {

void require_density_grid(const Momentum& p) {
  if (p.grid() != MomentumGrid::density)
    throw std::invalid_argument("density modes need a density-grid momentum");
}

void require_massless(const ThermalState& state, const char* what) {
  if (state.params.m != 0.0)
    throw std::invalid_argument(std::string(what) + " is stated at m = 0");
}

Operator sym_pair(std::shared_ptr<const FockBasis> basis, const Momentum& p) {
  const Operator rp = rho_mode(basis, p);
  const Operator rm = rho_mode(basis, p.negated());
  return rp * rm + rm * rp;
}

// <rho~_p rho~_-p + rho~_-p rho~_p>, real by construction
double sym_correlation(const ThermalState& state,
                       std::shared_ptr<const FockBasis> basis, const Momentum& p) {
  return thermal_expectation(state, sym_pair(basis, p)).real();
}

}  // namespace

BoundReport make_bound_report(std::string name, double lhs, double rhs, double tol,
                              std::string note) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.satisfied = lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
  r.note = std::move(note);
  return r;
}

Operator rho_mode(std::shared_ptr<const FockBasis> basis, const Momentum& p) {
  require_density_grid(p);
  const auto& cfg = basis->lattice();
  if (p.dim() != cfg.nu() || p.half_length() != cfg.half_length())
    throw std::invalid_argument("momentum does not live on this lattice's grid");
  const std::size_t volume = cfg.volume();
  std::vector<cd> phase(volume);
  for (std::size_t x = 0; x < volume; ++x) {
    const auto c = cfg.coords(x);
    const double arg = p.dot(c);
    phase[x] = cd(std::cos(arg), std::sin(arg)) / std::sqrt(static_cast<double>(volume));
  }
  OperatorBuilder b(basis);
  for (std::size_t i = 0; i < basis->dim(); ++i) {
    const std::uint32_t s = basis->state(i);
    cd v = 0.0;
    for (std::size_t x = 0; x < volume; ++x)
      v += (((s >> x) & 1u) ? 0.5 : -0.5) * phase[x];
    if (v != cd(0.0, 0.0)) b.add(i, i, v);
  }
  return b.build("rho~_p");
}

double lro_parameter(const ThermalState& state,
                     std::shared_ptr<const FockBasis> basis) {
  require_massless(state, "the long-range order parameter");
  const auto& cfg = basis->lattice();
  const double volume = static_cast<double>(cfg.volume());

  const Operator O = build_order_parameter(basis);
  const double o2 = thermal_expectation(state, O * O).real();
  const double m_sq = o2 / (volume * volume);

  const Operator rq = rho_mode(basis, momentum_Q(cfg));
  const double q_sq = thermal_expectation(state, rq * rq).real() / volume;

  if (std::abs(m_sq - q_sq) > 1e-12 * std::max(1.0, std::abs(m_sq)))
    throw std::logic_error("order-parameter and Q-mode routes disagree");
  if (m_sq < -1e-12) throw std::logic_error("negative <O^2>");
  return std::sqrt(std::max(0.0, m_sq));
}

BoundReport sum_rule_check(const ThermalState& state,
                           std::shared_ptr<const FockBasis> basis, double tol) {
  const auto& cfg = basis->lattice();
  double total = 0.0;
  for (const auto& p : density_momenta(cfg)) total += sym_correlation(state, basis, p);
  const double target = static_cast<double>(cfg.volume()) / 2.0;
  BoundReport r;
  r.name = "sum_rule";
  r.lhs = std::abs(total - target);
  r.rhs = 0.0;
  r.slack = -r.lhs;
  r.satisfied = r.lhs <= tol;
  r.note = "two-sided: |sum - |Lambda|/2| within tolerance " + std::to_string(tol);
  return r;
}

BoundReport gaussian_domination_check(std::shared_ptr<const FockBasis> basis,
                                      const ModelParams& params, const FieldH& field,
                                      double tol) {
  const Operator h_def = build_deformed(basis, params, field);
  const Operator h_zero = build_hamiltonian(basis, params);
  const auto dec_def = diagonalize(h_def);
  const auto dec_zero = diagonalize(h_zero);
  const double shift = std::min(dec_def.ground_energy(), dec_zero.ground_energy());
  auto shifted_trace = [&](const SpectralDecomposition& dec) {
    double z = 0.0;
    for (const auto& s : dec.sectors())
      z += (-params.beta * (s.values.array() - shift)).exp().sum();
    return z;
  };
  return make_bound_report("gaussian_domination", shifted_trace(dec_def),
                           shifted_trace(dec_zero), tol,
                           "shifted traces, common shift at the joint ground energy");
}

double double_commutator(const ThermalState& state,
                         std::shared_ptr<const FockBasis> basis, const Momentum& p) {
  require_massless(state, "the double commutator C_p");
  require_density_grid(p);
  const Operator rp = rho_mode(basis, p);
  // <[A, [H, A†]]> = Z^{-1} sum_{m,n} (E_n - E_m)(w_m - w_n) |A_mn|^2,
  // evaluated per particle-number block (rho~ is diagonal in occupation).
  const auto& dec = *state.dec;
  double acc = 0.0;
  const DenseMatrix rp_mat = rp.dense();
  const auto& sectors = dec.sectors();
  for (std::size_t si = 0; si < sectors.size(); ++si) {
    const auto& s = sectors[si];
    Eigen::VectorXcd diag(s.members.size());
    for (std::size_t i = 0; i < s.members.size(); ++i)
      diag(static_cast<Eigen::Index>(i)) = rp_mat(s.members[i], s.members[i]);
    const Eigen::MatrixXcd At = s.vectors.adjoint() * diag.asDiagonal() * s.vectors;
    const auto& w = state.weights[si];
    for (Eigen::Index mi = 0; mi < s.values.size(); ++mi)
      for (Eigen::Index ni = 0; ni < s.values.size(); ++ni)
        acc += (s.values(ni) - s.values(mi)) * (w(mi) - w(ni)) * std::norm(At(mi, ni));
  }
  return acc / state.z;
}

BoundReport infrared_check(const ThermalState& state,
                           std::shared_ptr<const FockBasis> basis, const Momentum& p,
                           double tol) {
  require_massless(state, "the infrared bound");
  require_density_grid(p);
  if (p.is_Q())
    throw std::invalid_argument("infrared bound degenerates at p = Q (E_{p+Q} = 0)");
  const double g = state.params.g;
  if (g <= 0.0) throw std::invalid_argument("infrared bound needs g > 0");
  const Operator rp = rho_mode(basis, p);
  const Operator rm = rho_mode(basis, p.negated());
  const double lhs = duhamel(state, rp, rm).real();
  const double epq = dispersion(p.shifted_by_Q());
  const double rhs = 1.0 / (2.0 * state.beta() * g * epq);
  return make_bound_report("infrared", lhs, rhs, tol);
}

DlsReports dls_check(const ThermalState& state, std::shared_ptr<const FockBasis> basis,
                     const Momentum& p, double tol) {
  require_massless(state, "the pair-correlation bound");
  require_density_grid(p);
  if (p.is_Q()) throw std::invalid_argument("pair bound degenerates at p = Q");
  const double g = state.params.g;
  if (g <= 0.0) throw std::invalid_argument("pair bound needs g > 0");
  const double beta = state.beta();
  const double epq = dispersion(p.shifted_by_Q());

  DlsReports out;
  out.c_p = double_commutator(state, basis, p);
  const double lhs = sym_correlation(state, basis, p);
  const double c = std::max(0.0, out.c_p);

  double coth_bound;
  if (c < 1e-13) {
    coth_bound = 1.0 / (beta * g * epq);  // x -> 0 limit of sqrt(a) coth(...)
  } else {
    const double a = std::sqrt(c / (2.0 * g * epq));
    const double x = std::sqrt(c * beta * beta * g * epq / 2.0);
    coth_bound = a / std::tanh(x);
  }
  const double linear_bound = std::sqrt(c / (2.0 * g * epq)) + 1.0 / (beta * g * epq);

  out.coth_form = make_bound_report("dls_coth", lhs, coth_bound, tol);
  out.linear_form = make_bound_report("dls_linear", lhs, linear_bound, tol);
  return out;
}

LroChainReport lro_chain(const ThermalState& state,
                         std::shared_ptr<const FockBasis> basis, double tol) {
  require_massless(state, "the long-range-order chain");
  const auto& cfg = basis->lattice();
  const double g = state.params.g;
  if (g <= 0.0) throw std::invalid_argument("the chain needs g > 0");
  const double beta = state.beta();
  const double volume = static_cast<double>(cfg.volume());

  LroChainReport rep;
  for (const auto& p : density_momenta(cfg)) {
    const double sym = sym_correlation(state, basis, p);
    const double cp = double_commutator(state, basis, p);
    rep.c_table.push_back(cp);
    rep.sym_sum_avg += sym / volume;
    if (p.is_Q()) {
      const Operator rq = rho_mode(basis, p);
      const double qq = thermal_expectation(state, rq * rq).real();
      rep.q_term = 2.0 * qq / volume;
      rep.mlro_sq = qq / volume;
      continue;
    }
    const double epq = dispersion(p.shifted_by_Q());
    rep.rhs_p_sum +=
        (1.0 / (beta * g * epq) + std::sqrt(std::max(0.0, cp) / (2.0 * g * epq))) /
        volume;
  }
  rep.chain_ok = rep.sym_sum_avg <=
                 rep.rhs_p_sum + rep.q_term + tol * std::max(1.0, rep.rhs_p_sum);
  rep.mlro_sq_lower = 0.25 - 0.5 * rep.rhs_p_sum;
  rep.certificate_positive = rep.mlro_sq_lower > 0.0;
  return rep;
}

double spontaneous_magnetization(std::shared_ptr<const FockBasis> basis,
                                 const ModelParams& params, double degeneracy_tol) {
  if (params.m <= 0.0)
    throw std::invalid_argument("spontaneous magnetization is evaluated at m > 0");
  const Operator h = build_hamiltonian(basis, params);
  const auto dec = diagonalize(h);
  const Operator O = build_order_parameter(basis);
  return ground_expectation(dec, O, degeneracy_tol) /
         static_cast<double>(basis->lattice().volume());
}

}  // namespace njl
