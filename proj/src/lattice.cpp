#include "njl/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace njl {

namespace {

int mod_positive(int a, int m) { return ((a % m) + m) % m; }

// wrap an integer label into the canonical density range (-L, L]
int wrap_density(int n, int half_length) {
  const int m = 2 * half_length;
  return mod_positive(n - (-half_length + 1), m) + (-half_length + 1);
}

// wrap a fermion label into [-L, L-1]
int wrap_fermion(int n, int half_length) {
  const int m = 2 * half_length;
  return mod_positive(n + half_length, m) - half_length;
}

}  // namespace

LatticeConfig::LatticeConfig(int nu, int half_length)
    : nu_(nu), half_length_(half_length) {
  if (nu < 2) throw std::invalid_argument("lattice dimension must be >= 2");
  if (half_length < 1) throw std::invalid_argument("half length must be >= 1");
  volume_ = 1;
  for (int i = 0; i < nu; ++i) volume_ *= static_cast<std::size_t>(2 * half_length);
}

std::size_t LatticeConfig::flat_index(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != nu_)
    throw std::invalid_argument("coordinate count does not match lattice dimension");
  std::size_t idx = 0;
  for (int i = 0; i < nu_; ++i) {
    const int c = coords[i];
    if (c < -half_length_ + 1 || c > half_length_)
      throw std::invalid_argument("site coordinate outside [-L+1, L]");
    idx = idx * static_cast<std::size_t>(side()) +
          static_cast<std::size_t>(c + half_length_ - 1);
  }
  return idx;
}

std::vector<int> LatticeConfig::coords(std::size_t index) const {
  if (index >= volume_) throw std::out_of_range("site index out of range");
  std::vector<int> out(nu_);
  for (int i = nu_ - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % side()) - half_length_ + 1;
    index /= side();
  }
  return out;
}

std::size_t LatticeConfig::neighbor(std::size_t index, int mu, int step) const {
  if (mu < 1 || mu > nu_) throw std::out_of_range("direction out of range");
  auto c = coords(index);
  const int shifted = c[mu - 1] + step;
  c[mu - 1] = wrap_density(shifted, half_length_);  // same canonical range as sites
  return flat_index(c);
}

bool LatticeConfig::crosses_boundary(std::size_t index, int mu) const {
  if (mu < 1 || mu > nu_) throw std::out_of_range("direction out of range");
  return coords(index)[mu - 1] == half_length_;
}

int parity_sign(std::span<const int> coords) {
  int s = 0;
  for (int c : coords) s += c;
  return mod_positive(s, 2) == 0 ? 1 : -1;
}

int parity_sign(const LatticeConfig& cfg, std::size_t index) {
  const auto c = cfg.coords(index);
  return parity_sign(c);
}

int staggered_exponent(const LatticeConfig& cfg, std::span<const int> coords, int mu) {
  if (mu < 1 || mu > cfg.nu()) throw std::out_of_range("direction out of range");
  int e = 0;
  for (int i = 0; i < mu - 1; ++i) e += coords[i];
  if (coords[mu - 1] == cfg.half_length()) e += 1;
  return mod_positive(e, 2);
}

int staggered_phase(const LatticeConfig& cfg, std::span<const int> coords, int mu) {
  return staggered_exponent(cfg, coords, mu) == 0 ? 1 : -1;
}

int staggered_phase(const LatticeConfig& cfg, std::size_t index, int mu) {
  const auto c = cfg.coords(index);
  return staggered_phase(cfg, c, mu);
}

Momentum::Momentum(MomentumGrid grid, std::vector<int> labels, int half_length)
    : grid_(grid), labels_(std::move(labels)), half_length_(half_length) {
  if (half_length_ < 1) throw std::invalid_argument("half length must be >= 1");
  for (int& n : labels_) {
    n = grid_ == MomentumGrid::density ? wrap_density(n, half_length_)
                                       : wrap_fermion(n, half_length_);
  }
}

double Momentum::component(int i) const {
  const int n = labels_.at(static_cast<std::size_t>(i));
  if (grid_ == MomentumGrid::density)
    return std::numbers::pi * n / half_length_;
  return std::numbers::pi * (2 * n + 1) / (2 * half_length_);
}

std::vector<double> Momentum::components() const {
  std::vector<double> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) out[i] = component(static_cast<int>(i));
  return out;
}

Momentum Momentum::negated() const {
  std::vector<int> n(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i)
    n[i] = grid_ == MomentumGrid::density ? -labels_[i] : -labels_[i] - 1;
  return Momentum(grid_, std::move(n), half_length_);
}

Momentum Momentum::shifted_by_pi(int axis) const {
  if (axis < 1 || axis > dim()) throw std::out_of_range("axis out of range");
  std::vector<int> n = labels_;
  n[axis - 1] += half_length_;
  return Momentum(grid_, std::move(n), half_length_);
}

Momentum Momentum::shifted_by_Q() const {
  std::vector<int> n = labels_;
  for (int& v : n) v += half_length_;
  return Momentum(grid_, std::move(n), half_length_);
}

bool Momentum::is_Q() const {
  if (grid_ != MomentumGrid::density) return false;
  for (int n : labels_)
    if (n != half_length_) return false;
  return true;
}

double Momentum::dot(std::span<const int> coords) const {
  double s = 0.0;
  for (std::size_t i = 0; i < labels_.size(); ++i) s += component(static_cast<int>(i)) * coords[i];
  return s;
}

bool Momentum::operator==(const Momentum& other) const {
  return grid_ == other.grid_ && half_length_ == other.half_length_ &&
         labels_ == other.labels_;
}

namespace {

std::vector<Momentum> enumerate_grid(const LatticeConfig& cfg, MomentumGrid grid) {
  const int L = cfg.half_length();
  const int lo = grid == MomentumGrid::density ? -L + 1 : -L;
  const int hi = grid == MomentumGrid::density ? L : L - 1;
  std::vector<Momentum> out;
  out.reserve(cfg.volume());
  std::vector<int> labels(cfg.nu(), lo);
  while (true) {
    out.emplace_back(grid, labels, L);
    int i = cfg.nu() - 1;
    while (i >= 0 && labels[i] == hi) labels[i--] = lo;
    if (i < 0) break;
    ++labels[i];
  }
  return out;
}

}  // namespace

std::vector<Momentum> density_momenta(const LatticeConfig& cfg) {
  return enumerate_grid(cfg, MomentumGrid::density);
}

std::vector<Momentum> fermion_momenta(const LatticeConfig& cfg) {
  return enumerate_grid(cfg, MomentumGrid::fermion);
}

Momentum momentum_Q(const LatticeConfig& cfg) {
  return Momentum(MomentumGrid::density,
                  std::vector<int>(cfg.nu(), cfg.half_length()), cfg.half_length());
}

double dispersion(std::span<const double> components) {
  double e = 0.0;
  for (double p : components) e += 0.5 * (1.0 - std::cos(p));
  return e;
}

double dispersion(const Momentum& p) {
  const auto c = p.components();
  return dispersion(c);
}

}  // namespace njl
