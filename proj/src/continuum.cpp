#include "njl/continuum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace njl::continuum {

namespace {

constexpr double kPi = std::numbers::pi;

int mod_positive(int a, int m) { return ((a % m) + m) % m; }

void require_nu3(const LatticeConfig& cfg) {
  if (cfg.nu() != 3)
    throw std::invalid_argument("the free-fermion analysis is three-dimensional");
}

// ket wave of the staggered Fourier frame: u_k(x) = exp(+i k.x) (-1)^{x_2} / sqrt(V),
// the coefficient of psi^(k) in psi(x). Momentum blocks are u_a† M u_b.
Eigen::VectorXcd frame_wave(const LatticeConfig& cfg, const std::vector<double>& k) {
  const std::size_t volume = cfg.volume();
  Eigen::VectorXcd w(volume);
  for (std::size_t x = 0; x < volume; ++x) {
    const auto c = cfg.coords(x);
    double arg = 0.0;
    for (int i = 0; i < cfg.nu(); ++i) arg += k[i] * c[i];
    const double stag = mod_positive(c[1], 2) == 0 ? 1.0 : -1.0;
    w(static_cast<Eigen::Index>(x)) =
        stag * cd(std::cos(arg), std::sin(arg)) / std::sqrt(static_cast<double>(volume));
  }
  return w;
}

std::vector<double> shifted_components(const Momentum& k, const std::array<int, 3>& K) {
  Momentum q = k;
  for (int i = 0; i < 3; ++i)
    if (K[i]) q = q.shifted_by_pi(i + 1);
  return q.components();
}

double sin_sq_sum(const std::vector<double>& k) {
  double s = 0.0;
  for (double ki : k) s += std::sin(ki) * std::sin(ki);
  return s;
}

}  // namespace

Eigen::MatrixXcd free_one_particle_matrix(const LatticeConfig& cfg, double kappa,
                                          double m) {
  require_nu3(cfg);
  const std::size_t volume = cfg.volume();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(volume, volume);
  for (std::size_t x = 0; x < volume; ++x) {
    const auto c = cfg.coords(x);
    const double p12 = mod_positive(c[0] + c[1], 2) == 0 ? 1.0 : -1.0;
    M(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) +=
        m * (parity_sign(c) > 0 ? 1.0 : -1.0);
    for (int mu = 1; mu <= 3; ++mu) {
      const std::size_t y = cfg.neighbor(x, mu);
      const double bc = cfg.crosses_boundary(x, mu) ? -1.0 : 1.0;
      cd fwd;  // coefficient of psi†(x) psi(x+e_mu)
      cd bwd;
      if (mu == 1) {
        fwd = cd(0.0, kappa) * bc;
        bwd = -fwd;
      } else if (mu == 2) {
        fwd = cd(-kappa * p12, 0.0) * bc;
        bwd = fwd;
      } else {
        fwd = cd(0.0, kappa * p12) * bc;
        bwd = -fwd;
      }
      M(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) += fwd;
      M(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) += bwd;
    }
  }
  return M;
}

std::vector<double> one_particle_spectrum(const LatticeConfig& cfg, double kappa,
                                          double m) {
  const Eigen::MatrixXcd M = free_one_particle_matrix(cfg, kappa, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  return out;
}

std::vector<double> folded_closed_form_spectrum(const LatticeConfig& cfg, double kappa,
                                                double m) {
  require_nu3(cfg);
  // Orbits under k -> k + K, K in {0, pi}^3, share sum_i sin^2 k_i; each orbit
  // of eight momenta carries four +E and four -E levels.
  std::map<std::array<long long, 3>, int> orbit_count;
  std::map<std::array<long long, 3>, double> orbit_value;
  for (const auto& k : fermion_momenta(cfg)) {
    const auto comps = k.components();
    std::array<long long, 3> key{};
    for (int i = 0; i < 3; ++i) {
      const double s2 = std::sin(comps[i]) * std::sin(comps[i]);
      key[i] = llround(s2 * 1e12);
    }
    std::sort(key.begin(), key.end());
    orbit_count[key] += 1;
    orbit_value[key] = sin_sq_sum(comps);
  }
  std::vector<double> out;
  out.reserve(cfg.volume());
  for (const auto& [key, count] : orbit_count) {
    const double e = std::sqrt(4.0 * kappa * kappa * orbit_value[key] + m * m);
    for (int i = 0; i < count / 2; ++i) {
      out.push_back(e);
      out.push_back(-e);
    }
    if (count % 2 != 0)
      throw std::logic_error("momentum orbit with odd multiplicity");
  }
  std::sort(out.begin(), out.end());
  return out;
}

DispersionReport dispersion_check(const LatticeConfig& cfg, double kappa, double m,
                                  double tol) {
  const auto spec = one_particle_spectrum(cfg, kappa, m);
  const auto expected = folded_closed_form_spectrum(cfg, kappa, m);
  DispersionReport rep;
  for (std::size_t i = 0; i < spec.size(); ++i)
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(spec[i] - expected[i]));
  rep.ok = rep.max_abs_diff <= tol;
  return rep;
}

Eigen::Matrix4d assembly_up() {
  Eigen::Matrix4d u;
  u << 1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1, 1, -1, -1;
  return 0.5 * u;
}

Eigen::Matrix4d assembly_down() {
  Eigen::Matrix4d u;
  u << -1, 1, -1, 1, -1, -1, -1, -1, 1, -1, -1, 1, 1, 1, -1, -1;
  return 0.5 * u;
}

Eigen::Matrix4d gamma0() {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = g(1, 1) = 1.0;
  g(2, 2) = g(3, 3) = -1.0;
  return g;
}

Eigen::Matrix4d gamma5() {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 2) = g(1, 3) = g(2, 0) = g(3, 1) = 1.0;
  return g;
}

Eigen::Matrix4cd pauli_block(int i) {
  Eigen::Matrix2cd s;
  if (i == 1)
    s << 0, 1, 1, 0;
  else if (i == 2)
    s << 0, cd(0, -1), cd(0, 1), 0;
  else if (i == 3)
    s << 1, 0, 0, -1;
  else
    throw std::out_of_range("Pauli index");
  Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
  b.block<2, 2>(0, 2) = s;
  b.block<2, 2>(2, 0) = s;
  return b;
}

bool gamma_identities_exact() {
  const Eigen::Matrix4d g0 = gamma0();
  const Eigen::Matrix4d g5 = gamma5();
  if ((g5 * g5 - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() != 0.0) return false;
  if ((g5 * g0 * g5 + g0).cwiseAbs().maxCoeff() != 0.0) return false;
  for (int i = 1; i <= 3; ++i) {
    const Eigen::Matrix4cd b = pauli_block(i);
    if ((g5.cast<cd>() * b - b * g5.cast<cd>()).cwiseAbs().maxCoeff() != 0.0)
      return false;
  }
  const Eigen::Matrix4d uu = assembly_up();
  const Eigen::Matrix4d ud = assembly_down();
  if ((uu.transpose() * uu - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() != 0.0)
    return false;
  if ((ud.transpose() * ud - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() != 0.0)
    return false;
  return true;
}

DiracFormReport dirac_form_check(const LatticeConfig& cfg, double kappa, double m,
                                 const Momentum& k) {
  require_nu3(cfg);
  if (k.grid() != MomentumGrid::fermion)
    throw std::invalid_argument("the Dirac check needs a fermion-grid momentum");
  if (k.half_length() != cfg.half_length() || k.dim() != 3)
    throw std::invalid_argument("momentum does not live on this lattice's grid");
  for (double c : k.components())
    if (std::abs(c) > kPi / 2 + 1e-12)
      throw std::invalid_argument("momentum outside the first folded zone");

  const Eigen::MatrixXcd M = free_one_particle_matrix(cfg, kappa, m);

  const std::array<std::array<int, 3>, 4> up_offsets{
      {{0, 0, 0}, {0, 0, 1}, {1, 1, 0}, {1, 1, 1}}};
  const std::array<std::array<int, 3>, 4> down_offsets{
      {{1, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 0, 1}}};

  std::array<Eigen::VectorXcd, 4> up_waves, down_waves;
  for (int i = 0; i < 4; ++i) {
    up_waves[i] = frame_wave(cfg, shifted_components(k, up_offsets[i]));
    down_waves[i] = frame_wave(cfg, shifted_components(k, down_offsets[i]));
  }

  auto block = [&](const std::array<Eigen::VectorXcd, 4>& rows,
                   const std::array<Eigen::VectorXcd, 4>& cols) {
    Eigen::Matrix4cd t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t(a, b) = rows[a].dot(M * cols[b]);
    return t;
  };

  const Eigen::Matrix4cd t_up = block(up_waves, up_waves);
  const Eigen::Matrix4cd t_down = block(down_waves, down_waves);
  const Eigen::Matrix4cd t_cross = block(up_waves, down_waves);

  const auto comps = k.components();
  Eigen::Matrix4cd dirac = Eigen::Matrix4cd::Zero();
  for (int i = 1; i <= 3; ++i) dirac += -2.0 * kappa * std::sin(comps[i - 1]) * pauli_block(i);
  dirac += m * gamma0().cast<cd>();

  const Eigen::Matrix4cd uu = assembly_up().cast<cd>();
  const Eigen::Matrix4cd ud = assembly_down().cast<cd>();
  const Eigen::Matrix4cd r_up = uu * t_up * uu.transpose();
  const Eigen::Matrix4cd r_down = ud * t_down * ud.transpose();

  DiracFormReport rep;
  rep.matrix_residual = std::max((r_up - dirac).cwiseAbs().maxCoeff(),
                                 (r_down - dirac).cwiseAbs().maxCoeff());
  rep.cross_block = t_cross.cwiseAbs().maxCoeff();

  // eigenpairs of the orbit blocks, pushed through the assembly
  for (const auto& [t, u] : {std::pair{t_up, uu}, std::pair{t_down, ud}}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(t);
    for (int i = 0; i < 4; ++i) {
      const Eigen::Vector4cd v = u * solver.eigenvectors().col(i);
      const double res = (dirac * v - solver.eigenvalues()(i) * v).cwiseAbs().maxCoeff();
      rep.eigenpair_residual = std::max(rep.eigenpair_residual, res);
    }
  }

  const double e = std::sqrt(4.0 * kappa * kappa * sin_sq_sum(comps) + m * m);
  rep.energies = {-e, e};
  return rep;
}

ChiralSelectionReport chiral_selection_check(const LatticeConfig& cfg, double kappa,
                                             double beta, double m) {
  require_nu3(cfg);
  if (beta <= 0.0) throw std::invalid_argument("inverse temperature must be > 0");
  const Eigen::MatrixXcd M = free_one_particle_matrix(cfg, kappa, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(M);
  const Eigen::VectorXd f =
      (1.0 / (1.0 + (beta * solver.eigenvalues().array()).exp())).matrix();
  // <psi†(a) psi(b)> = F(b, a)
  const Eigen::MatrixXcd F = solver.eigenvectors() * f.asDiagonal() *
                             solver.eigenvectors().adjoint();

  ChiralSelectionReport rep;
  for (const auto& p : fermion_momenta(cfg)) {
    bool small = true;
    for (double c : p.components())
      if (std::abs(c) > kPi / 2 + 1e-12) small = false;
    if (!small) continue;
    std::array<Eigen::VectorXcd, 8> waves;
    std::array<int, 8> sgn{};
    for (int mask = 0; mask < 8; ++mask) {
      const std::array<int, 3> K{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
      waves[mask] = frame_wave(cfg, shifted_components(p, K));
      sgn[mask] = sgn_of(K);
    }
    for (int a = 0; a < 8; ++a) {
      // <psi^†(p+K_a) psi^(p+K_b)> = u_b† F u_a with F(y,x) = <psi†(x)psi(y)>
      const Eigen::VectorXcd t = F * waves[a];
      for (int b = 0; b < 8; ++b) {
        const cd value = waves[b].dot(t);
        ++rep.pairs_checked;
        if (sgn[a] * sgn[b] < 0)
          rep.max_opposite = std::max(rep.max_opposite, std::abs(value));
        else
          rep.max_same = std::max(rep.max_same, std::abs(value));
      }
    }
  }
  return rep;
}

int sgn_of(const std::array<int, 3>& half_turns) {
  int count = 0;
  for (int h : half_turns) {
    if (h != 0 && h != 1) throw std::invalid_argument("half-turn entries are 0 or 1");
    count += h;
  }
  return count % 2 == 0 ? 1 : -1;
}

SgnRuleReport sgn_selection_rule() {
  SgnRuleReport rep;
  for (int k1 = 0; k1 < 8; ++k1) {
    for (int k2 = 0; k2 < 8; ++k2) {
      for (int k3 = 0; k3 < 8; ++k3) {
        for (int k4 = 0; k4 < 8; ++k4) {
          ++rep.tuples_total;
          if ((k1 ^ k3) != (k2 ^ k4)) continue;  // K1 + K3 = K2 + K4 mod 2pi
          ++rep.conserving;
          auto unpack = [](int mask) {
            return std::array<int, 3>{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
          };
          const int prod = sgn_of(unpack(k1)) * sgn_of(unpack(k2)) *
                           sgn_of(unpack(k3)) * sgn_of(unpack(k4));
          if (prod != 1) ++rep.violations;
        }
      }
    }
  }
  rep.ok = rep.violations == 0;
  return rep;
}

double IntegralEstimate::require_converged() const {
  if (!converged)
    throw std::runtime_error("the integral did not converge under refinement");
  return value;
}

IntegralEstimate bz_integral(char kind, int nu, const QuadratureSpec& spec) {
  if (kind != 'I' && kind != 'J') throw std::invalid_argument("kind is 'I' or 'J'");
  if (nu < 2) throw std::invalid_argument("dimension must be >= 2");
  if (spec.base_resolution < 2 || spec.base_resolution % 2 != 0)
    throw std::invalid_argument("base resolution must be even and >= 2");
  if (spec.levels < 3) throw std::invalid_argument("need at least three ladder levels");

  auto midpoint_sum = [&](int n) {
    std::vector<double> axis(n);
    for (int i = 0; i < n; ++i)
      axis[i] = 0.5 * (1.0 - std::cos(-kPi + (i + 0.5) * (2.0 * kPi / n)));
    // iterate the tensor grid with a digit counter
    std::vector<int> digits(nu, 0);
    double e = 0.0;
    for (int d = 0; d < nu; ++d) e += axis[0];
    double total = 0.0;
    while (true) {
      total += kind == 'I' ? 1.0 / e : 1.0 / std::sqrt(e);
      int d = nu - 1;
      while (d >= 0) {
        e -= axis[digits[d]];
        if (++digits[d] < n) {
          e += axis[digits[d]];
          break;
        }
        digits[d] = 0;
        e += axis[0];
        --d;
      }
      if (d < 0) break;
    }
    double cells = 1.0;
    for (int d = 0; d < nu; ++d) cells *= n;
    return total / cells;
  };

  IntegralEstimate est;
  int n = spec.base_resolution;
  for (int l = 0; l < spec.levels; ++l, n *= 2)
    est.ladder.emplace_back(n, midpoint_sum(n));

  const std::size_t last = est.ladder.size() - 1;
  const double v2 = est.ladder[last].second;
  const double v1 = est.ladder[last - 1].second;
  const double v0 = est.ladder[last - 2].second;
  const double d1 = v1 - v0;
  const double d2 = v2 - v1;

  if (std::abs(d2) < 1e-14 * std::max(1.0, std::abs(v2))) {
    est.value = v2;
    est.error = std::abs(d2);
    est.order = std::numeric_limits<double>::infinity();
    est.converged = true;
    return est;
  }
  if (std::abs(d1) <= std::abs(d2) || d1 * d2 < 0.0) {
    // not a power-law ladder; treat as non-convergent (or noisy)
    est.value = v2;
    est.error = std::abs(d2);
    est.order = 0.0;
    est.converged = false;
    return est;
  }
  const double q = std::log2(std::abs(d1) / std::abs(d2));
  est.order = q;
  if (q < 0.3) {  // deltas barely shrink: divergent integrand (I with nu = 2)
    est.value = v2;
    est.error = std::abs(d2);
    est.converged = false;
    return est;
  }
  const double extrap = v2 + d2 / (std::pow(2.0, q) - 1.0);
  // previous-level extrapolation for the error estimate
  double extrap_prev = extrap;
  if (last >= 3) {
    const double d0 = v0 - est.ladder[last - 3].second;
    if (std::abs(d1) > 0 && std::abs(d0) > std::abs(d1) && d0 * d1 > 0) {
      const double q_prev = std::log2(std::abs(d0) / std::abs(d1));
      extrap_prev = v1 + d1 / (std::pow(2.0, q_prev) - 1.0);
    }
  }
  est.value = extrap;
  est.error = std::max(std::abs(extrap - extrap_prev), 1e-12 * std::abs(extrap));
  est.converged = true;
  return est;
}

RegionCertificate theorem_region(double kappa, double g, std::optional<double> beta,
                                 int nu, const IntegralEstimate& i_nu,
                                 const IntegralEstimate& j_nu) {
  if (g <= 0.0) throw std::invalid_argument("the certificate needs g > 0");
  if (nu < 2) throw std::invalid_argument("dimension must be >= 2");
  RegionCertificate cert;
  cert.finite_beta = beta.has_value();
  if (beta) {
    if (*beta <= 0.0) throw std::invalid_argument("inverse temperature must be > 0");
    if (nu == 2)
      throw std::invalid_argument(
          "the finite-temperature certificate needs nu >= 3 (the 1/E integral "
          "diverges in two dimensions)");
  }
  const double j = j_nu.require_converged();
  double bound = 0.25 - std::sqrt(std::abs(kappa) * nu / g) * j;
  if (beta) bound -= i_nu.require_converged() / (2.0 * *beta * g);
  cert.lower_bound = bound;
  cert.positive = bound > 0.0;
  cert.threshold_kappa_over_g = 1.0 / (16.0 * j * j * nu);
  return cert;
}

RegionCertificate theorem_region(double kappa, double g, std::optional<double> beta,
                                 int nu) {
  QuadratureSpec spec;
  // keep the finest level around ~10^7 cells as the dimension grows
  spec.base_resolution = nu <= 3 ? 32 : (nu == 4 ? 8 : 4);
  spec.levels = nu == 2 ? 6 : 4;
  IntegralEstimate i_nu;
  if (beta && nu >= 3) i_nu = bz_integral('I', nu, spec);
  const IntegralEstimate j_nu = bz_integral('J', nu, spec);
  return theorem_region(kappa, g, beta, nu, i_nu, j_nu);
}

}  // namespace njl::continuum
