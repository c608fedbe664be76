#pragma once

#include <string>
#include <vector>

#include "njl/spectra.hpp"

namespace njl {

struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;  // lhs <= rhs + tolerance used at check time
  double slack = 0.0;      // rhs - lhs
  std::string note;
};

BoundReport make_bound_report(std::string name, double lhs, double rhs, double tol,
                              std::string note = {});

// rho~_p = |Lambda|^{-1/2} sum_x rho(x) exp(i p.x); density-grid p only.
Operator rho_mode(std::shared_ptr<const FockBasis> basis, const Momentum& p);

// m_LRO = |Lambda|^{-1} sqrt(<O^2>); the rho~_Q route is computed as well and
// must agree to 1e-12.
double lro_parameter(const ThermalState& state, std::shared_ptr<const FockBasis> basis);

// sum_p <rho~_p rho~_-p + rho~_-p rho~_p> = |Lambda|/2, exactly, any parameters.
BoundReport sum_rule_check(const ThermalState& state,
                           std::shared_ptr<const FockBasis> basis, double tol = 1e-9);

// tr exp(-beta H(m,h)) <= tr exp(-beta H(m,0)), with one common energy shift.
BoundReport gaussian_domination_check(std::shared_ptr<const FockBasis> basis,
                                      const ModelParams& params, const FieldH& field,
                                      double tol = 1e-8);

// C_p = <[rho~_p, [H(0), rho~_-p]]> at m = 0.
double double_commutator(const ThermalState& state,
                         std::shared_ptr<const FockBasis> basis, const Momentum& p);

// Duhamel (rho~_p, rho~_-p) <= 1 / (2 beta g E_{p+Q}); p != Q, m = 0, g > 0.
BoundReport infrared_check(const ThermalState& state,
                           std::shared_ptr<const FockBasis> basis, const Momentum& p,
                           double tol = 1e-8);

struct DlsReports {
  BoundReport coth_form;
  BoundReport linear_form;
  double c_p = 0.0;
};

// <sym pair correlation> against the coth bound and its linear weakening.
DlsReports dls_check(const ThermalState& state, std::shared_ptr<const FockBasis> basis,
                     const Momentum& p, double tol = 1e-8);

struct LroChainReport {
  double sym_sum_avg = 0.0;   // |Lambda|^{-1} sum_p <sym>
  double rhs_p_sum = 0.0;     // |Lambda|^{-1} sum_{p != Q} [1/(beta g E) + sqrt(C_p/(2gE))]
  double q_term = 0.0;        // 2 <rho~_Q rho~_Q> / |Lambda|
  bool chain_ok = false;
  double mlro_sq = 0.0;
  double mlro_sq_lower = 0.0;  // 1/4 - rhs_p_sum / 2
  bool certificate_positive = false;
  std::vector<double> c_table;  // C_p in density_momenta order
};

LroChainReport lro_chain(const ThermalState& state,
                         std::shared_ptr<const FockBasis> basis, double tol = 1e-8);

// omega_{0,m}(O)/|Lambda| from the degeneracy-averaged ground expectation; m > 0.
double spontaneous_magnetization(std::shared_ptr<const FockBasis> basis,
                                 const ModelParams& params,
                                 double degeneracy_tol = 1e-8);

}  // namespace njl
