#include "njl/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace njl {

void ModelParams::validate() const {
  if (g < 0.0) throw std::invalid_argument("coupling g must be >= 0");
  if (beta <= 0.0) throw std::invalid_argument("inverse temperature must be > 0");
  if (!std::isfinite(kappa) || !std::isfinite(m) || !std::isfinite(g) ||
      !std::isfinite(beta))
    throw std::invalid_argument("model parameters must be finite");
}

FieldH::FieldH(const LatticeConfig& cfg)
    : nu_(cfg.nu()), volume_(cfg.volume()), values_(nu_ * volume_, 0.0) {}

double FieldH::at(int mu, std::size_t site) const {
  if (mu < 1 || mu > nu_ || site >= volume_)
    throw std::out_of_range("field index out of range");
  return values_[(mu - 1) * volume_ + site];
}

double& FieldH::at(int mu, std::size_t site) {
  if (mu < 1 || mu > nu_ || site >= volume_)
    throw std::out_of_range("field index out of range");
  return values_[(mu - 1) * volume_ + site];
}

bool FieldH::is_zero() const {
  for (double v : values_)
    if (v != 0.0) return false;
  return true;
}

FieldH FieldH::random(const LatticeConfig& cfg, std::mt19937_64& rng, double amplitude) {
  FieldH h(cfg);
  std::normal_distribution<double> dist(0.0, amplitude);
  for (int mu = 1; mu <= cfg.nu(); ++mu)
    for (std::size_t x = 0; x < cfg.volume(); ++x) h.at(mu, x) = dist(rng);
  return h;
}

namespace {

struct Bond {
  std::size_t from;
  std::size_t to;  // from + e_mu (wrapped)
  int mu;          // 1-based
  int phase;       // (-1)^{theta_mu(from)}, boundary +1 included
  bool crosses;    // from_mu == L
};

std::vector<Bond> bond_table(const LatticeConfig& cfg) {
  std::vector<Bond> bonds;
  bonds.reserve(cfg.volume() * cfg.nu());
  for (std::size_t x = 0; x < cfg.volume(); ++x) {
    for (int mu = 1; mu <= cfg.nu(); ++mu) {
      bonds.push_back(Bond{x, cfg.neighbor(x, mu), mu, staggered_phase(cfg, x, mu),
                           cfg.crosses_boundary(x, mu)});
    }
  }
  return bonds;
}

// scatter coeff * psi†(to) psi(from) |state> into the builder column c
void add_hop(OperatorBuilder& b, const FockBasis& basis, std::uint32_t s, std::size_t c,
             std::size_t to, std::size_t from, cd coeff) {
  const std::uint32_t bf = std::uint32_t{1} << from;
  const std::uint32_t bt = std::uint32_t{1} << to;
  if (!(s & bf)) return;
  const std::uint32_t s1 = s ^ bf;
  const int sign1 = jw_sign(s, static_cast<int>(from));
  if (s1 & bt) return;
  const std::uint32_t s2 = s1 | bt;
  const int sign2 = jw_sign(s1, static_cast<int>(to));
  const auto r = basis.index_of(s2);
  b.add(static_cast<std::size_t>(r), c, coeff * static_cast<double>(sign1 * sign2));
}

double rho_of(std::uint32_t s, std::size_t site) {
  return (s >> site) & 1u ? 0.5 : -0.5;
}

std::vector<int> parity_table(const LatticeConfig& cfg) {
  std::vector<int> par(cfg.volume());
  for (std::size_t x = 0; x < cfg.volume(); ++x) par[x] = parity_sign(cfg, x);
  return par;
}

}  // namespace

Operator build_hopping_direction(std::shared_ptr<const FockBasis> basis, double kappa,
                                 int mu) {
  const auto& cfg = basis->lattice();
  if (mu < 1 || mu > cfg.nu()) throw std::out_of_range("direction out of range");
  OperatorBuilder b(basis);
  const auto bonds = bond_table(cfg);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    for (const auto& bd : bonds) {
      if (bd.mu != mu) continue;
      const cd coeff = cd(0.0, kappa * bd.phase);
      add_hop(b, *basis, s, c, bd.from, bd.to, coeff);
      add_hop(b, *basis, s, c, bd.to, bd.from, -coeff);
    }
  }
  return b.build("H_K," + std::to_string(mu));
}

Operator build_hopping(std::shared_ptr<const FockBasis> basis, double kappa) {
  const auto& cfg = basis->lattice();
  OperatorBuilder b(basis);
  const auto bonds = bond_table(cfg);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    for (const auto& bd : bonds) {
      // i kappa (-1)^theta [psi†(x) psi(x+e_mu) - psi†(x+e_mu) psi(x)]
      const cd coeff = cd(0.0, kappa * bd.phase);
      add_hop(b, *basis, s, c, bd.from, bd.to, coeff);
      add_hop(b, *basis, s, c, bd.to, bd.from, -coeff);
    }
  }
  return b.build("H_K");
}

Operator build_order_parameter(std::shared_ptr<const FockBasis> basis) {
  const auto& cfg = basis->lattice();
  const auto par = parity_table(cfg);
  OperatorBuilder b(basis);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    double v = 0.0;
    for (std::size_t x = 0; x < cfg.volume(); ++x) v += par[x] * rho_of(s, x);
    b.add(c, c, v);
  }
  return b.build("O");
}

Operator build_interaction(std::shared_ptr<const FockBasis> basis, double g) {
  const auto& cfg = basis->lattice();
  const auto bonds = bond_table(cfg);
  OperatorBuilder b(basis);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    double v = 0.0;
    for (const auto& bd : bonds) v += rho_of(s, bd.from) * rho_of(s, bd.to);
    b.add(c, c, g * v);
  }
  return b.build("H_int");
}

Operator build_hamiltonian(std::shared_ptr<const FockBasis> basis,
                           const ModelParams& params) {
  params.validate();
  const auto& cfg = basis->lattice();
  const auto bonds = bond_table(cfg);
  const auto par = parity_table(cfg);
  OperatorBuilder b(basis);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    double diag = 0.0;
    for (const auto& bd : bonds) diag += rho_of(s, bd.from) * rho_of(s, bd.to);
    diag *= params.g;
    if (params.m != 0.0) {
      double o = 0.0;
      for (std::size_t x = 0; x < cfg.volume(); ++x) o += par[x] * rho_of(s, x);
      diag += params.m * o;
    }
    if (diag != 0.0) b.add(c, c, diag);
    for (const auto& bd : bonds) {
      const cd coeff = cd(0.0, params.kappa * bd.phase);
      add_hop(b, *basis, s, c, bd.from, bd.to, coeff);
      add_hop(b, *basis, s, c, bd.to, bd.from, -coeff);
    }
  }
  return b.build("H(m)");
}

Operator build_deformed(std::shared_ptr<const FockBasis> basis,
                        const ModelParams& params, const FieldH& field) {
  params.validate();
  const auto& cfg = basis->lattice();
  if (field.nu() != cfg.nu() || field.volume() != cfg.volume())
    throw std::invalid_argument("field shape does not match lattice");
  const auto bonds = bond_table(cfg);
  const auto par = parity_table(cfg);

  // (g/2) sum [rho(x) + rho(x+e) + p(x) h]^2 expands into the plain
  // interaction plus a rho-linear term plus the scalar (g/2) sum h^2; the
  // grouping below keeps H(m, h=0) bit-identical to build_hamiltonian.
  double h2sum = 0.0;
  for (const auto& bd : bonds) {
    const double h = field.at(bd.mu, bd.from);
    h2sum += h * h;
  }

  OperatorBuilder b(basis);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    double bondsum = 0.0;
    double linear = 0.0;
    for (const auto& bd : bonds) {
      const double rx = rho_of(s, bd.from);
      const double ry = rho_of(s, bd.to);
      bondsum += rx * ry;
      const double h = field.at(bd.mu, bd.from);
      if (h != 0.0) linear += (rx + ry) * par[bd.from] * h;
    }
    double diag = params.g * bondsum;
    if (params.m != 0.0) {
      double o = 0.0;
      for (std::size_t x = 0; x < cfg.volume(); ++x) o += par[x] * rho_of(s, x);
      diag += params.m * o;
    }
    if (linear != 0.0) diag += params.g * linear;
    if (h2sum != 0.0) diag += 0.5 * params.g * h2sum;
    if (diag != 0.0) b.add(c, c, diag);
    for (const auto& bd : bonds) {
      const cd coeff = cd(0.0, params.kappa * bd.phase);
      add_hop(b, *basis, s, c, bd.from, bd.to, coeff);
      add_hop(b, *basis, s, c, bd.to, bd.from, -coeff);
    }
  }
  return b.build("H(m,h)");
}

Operator build_free_nu3(std::shared_ptr<const FockBasis> basis, double kappa, double m) {
  const auto& cfg = basis->lattice();
  if (cfg.nu() != 3)
    throw std::invalid_argument("the explicit free Hamiltonian is three-dimensional");
  OperatorBuilder b(basis);
  const std::size_t volume = cfg.volume();

  struct FreeBond {
    std::size_t from, to;
    cd forward;   // coefficient of psi†(from) psi(to)
    cd backward;  // coefficient of psi†(to) psi(from)
  };
  std::vector<FreeBond> bonds;
  for (std::size_t x = 0; x < volume; ++x) {
    const auto c = cfg.coords(x);
    const double p12 = ((c[0] + c[1]) % 2 + 2) % 2 == 0 ? 1.0 : -1.0;
    for (int mu = 1; mu <= 3; ++mu) {
      const std::size_t y = cfg.neighbor(x, mu);
      const double bc = cfg.crosses_boundary(x, mu) ? -1.0 : 1.0;
      cd fwd, bwd;
      if (mu == 1) {
        fwd = cd(0.0, kappa) * bc;  // i k [psi†(x)psi(x+e1) - psi†(x+e1)psi(x)]
        bwd = -fwd;
      } else if (mu == 2) {
        // i k * i * (-1)^{x1+x2} [psi†(x)psi(x+e2) + psi†(x+e2)psi(x)]
        fwd = cd(-kappa * p12, 0.0) * bc;
        bwd = fwd;
      } else {
        fwd = cd(0.0, kappa * p12) * bc;
        bwd = -fwd;
      }
      bonds.push_back(FreeBond{x, y, fwd, bwd});
    }
  }

  const auto par = parity_table(cfg);
  for (std::size_t col = 0; col < basis->dim(); ++col) {
    const std::uint32_t s = basis->state(col);
    if (m != 0.0) {
      double diag = 0.0;
      for (std::size_t x = 0; x < volume; ++x)
        if ((s >> x) & 1u) diag += m * par[x];
      if (diag != 0.0) b.add(col, col, diag);
    }
    for (const auto& bd : bonds) {
      add_hop(b, *basis, s, col, bd.from, bd.to, bd.forward);
      add_hop(b, *basis, s, col, bd.to, bd.from, bd.backward);
    }
  }
  return b.build("H_free");
}

Operator build_general_interaction(std::shared_ptr<const FockBasis> basis,
                                   const std::vector<double>& ghat,
                                   bool enforce_support, double eps0) {
  const auto& cfg = basis->lattice();
  const auto momenta = density_momenta(cfg);
  if (ghat.size() != momenta.size())
    throw std::invalid_argument("ghat must be given on the density momentum grid");
  if (enforce_support) {
    for (std::size_t i = 0; i < momenta.size(); ++i) {
      if (ghat[i] == 0.0) continue;
      for (double comp : momenta[i].components())
        if (std::abs(comp) > eps0)
          throw std::invalid_argument("ghat support exceeds the requested box");
    }
  }

  const std::size_t volume = cfg.volume();
  const auto par = parity_table(cfg);

  // c(x, y) = par(x) par(y) G(x - y), G the DFT of ghat
  std::vector<std::vector<int>> coords(volume);
  for (std::size_t x = 0; x < volume; ++x) coords[x] = cfg.coords(x);
  Eigen::MatrixXcd pair_coeff(volume, volume);
  for (std::size_t x = 0; x < volume; ++x) {
    for (std::size_t y = 0; y < volume; ++y) {
      std::vector<int> z(cfg.nu());
      for (int i = 0; i < cfg.nu(); ++i) z[i] = coords[x][i] - coords[y][i];
      cd G = 0.0;
      for (std::size_t k = 0; k < momenta.size(); ++k) {
        if (ghat[k] == 0.0) continue;
        const double phase = momenta[k].dot(z);
        G += ghat[k] * cd(std::cos(phase), std::sin(phase));
      }
      pair_coeff(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
          G * static_cast<double>(par[x] * par[y]) / static_cast<double>(volume);
    }
  }

  OperatorBuilder b(basis);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const std::uint32_t s = basis->state(c);
    cd v = 0.0;
    for (std::size_t x = 0; x < volume; ++x) {
      if (!((s >> x) & 1u)) continue;
      for (std::size_t y = 0; y < volume; ++y) {
        if (!((s >> y) & 1u)) continue;
        v += pair_coeff(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      }
    }
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
      throw std::logic_error("general interaction produced a non-real diagonal");
    if (v.real() != 0.0) b.add(c, c, v.real());
  }
  return b.build("H_G");
}

Eigen::MatrixXcd one_particle_hopping(const LatticeConfig& cfg, double kappa) {
  const std::size_t volume = cfg.volume();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(volume, volume);
  for (const auto& bd : bond_table(cfg)) {
    const cd coeff = cd(0.0, kappa * bd.phase);
    M(static_cast<Eigen::Index>(bd.from), static_cast<Eigen::Index>(bd.to)) += coeff;
    M(static_cast<Eigen::Index>(bd.to), static_cast<Eigen::Index>(bd.from)) -= coeff;
  }
  return M;
}

}  // namespace njl
