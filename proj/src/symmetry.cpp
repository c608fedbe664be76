#include "njl/symmetry.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace njl {

namespace {

void require_full(const FockBasis& basis, const char* what) {
  if (!basis.is_full())
    throw std::invalid_argument(std::string(what) + " mixes particle-number sectors");
}

int mod_positive(int a, int m) { return ((a % m) + m) % m; }

// mask of sites selected by a coordinate predicate
template <typename Pred>
std::uint32_t site_mask(const LatticeConfig& cfg, Pred pred) {
  std::uint32_t mask = 0;
  for (std::size_t x = 0; x < cfg.volume(); ++x)
    if (pred(cfg.coords(x))) mask |= std::uint32_t{1} << x;
  return mask;
}

Operator diagonal_phase(std::shared_ptr<const FockBasis> basis, std::uint32_t mask,
                        cd factor_per_particle, std::string label) {
  OperatorBuilder b(basis);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    const int count = std::popcount(basis->state(c) & mask);
    cd phase = 1.0;
    for (int i = 0; i < count; ++i) phase *= factor_per_particle;
    b.add(c, c, phase);
  }
  return b.build(std::move(label));
}

// u(x) = [prod_{y != x} (-1)^{n(y)}] (psi†(x) + psi(x)) applied to one state
std::pair<std::uint32_t, double> apply_u(std::uint32_t s, int site) {
  const std::uint32_t bit = std::uint32_t{1} << site;
  double sign = jw_sign(s, site);  // xi(x)
  const std::uint32_t t = s ^ bit;
  const int others = std::popcount(t) - ((t >> site) & 1u);
  if (others & 1) sign = -sign;
  return {t, sign};
}

Operator product_of_u(std::shared_ptr<const FockBasis> basis,
                      const std::vector<int>& sites, std::string label) {
  require_full(*basis, label.c_str());
  OperatorBuilder b(basis);
  for (std::size_t c = 0; c < basis->dim(); ++c) {
    std::uint32_t s = basis->state(c);
    double sign = 1.0;
    // rightmost factor acts first; sites are multiplied in ascending order
    for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
      auto [t, sg] = apply_u(s, *it);
      s = t;
      sign *= sg;
    }
    b.add(static_cast<std::size_t>(basis->index_of(s)), c, sign);
  }
  return b.build(std::move(label));
}

}  // namespace

Operator build_particle_hole(std::shared_ptr<const FockBasis> basis) {
  const auto& cfg = basis->lattice();
  std::vector<int> sites(cfg.volume());
  for (std::size_t x = 0; x < cfg.volume(); ++x) sites[x] = static_cast<int>(x);
  return product_of_u(basis, sites, "U_PH");
}

Operator build_Uodd(std::shared_ptr<const FockBasis> basis) {
  const auto& cfg = basis->lattice();
  std::vector<int> sites;
  for (std::size_t x = 0; x < cfg.volume(); ++x)
    if (parity_sign(cfg, x) < 0) sites.push_back(static_cast<int>(x));
  return product_of_u(basis, sites, "U_odd");
}

Operator build_U1j(std::shared_ptr<const FockBasis> basis, int j) {
  const auto& cfg = basis->lattice();
  if (j < 2 || j > cfg.nu()) throw std::out_of_range("U_1,j needs 2 <= j <= nu");
  require_full(*basis, "U_1,j");
  const std::uint32_t mask = site_mask(
      cfg, [&](const std::vector<int>& c) { return mod_positive(c[j - 1], 2) == 0; });
  return diagonal_phase(basis, mask, cd(0.0, 1.0), "U_1," + std::to_string(j));
}

Operator build_U1(std::shared_ptr<const FockBasis> basis) {
  const auto& cfg = basis->lattice();
  require_full(*basis, "U_1");
  Operator u = Operator::identity(basis, "U_1");
  for (int j = 2; j <= cfg.nu(); ++j) u = u * build_U1j(basis, j);
  u.set_label("U_1");
  return u;
}

Operator build_Utilde1(std::shared_ptr<const FockBasis> basis) {
  Operator u = build_U1(basis) * build_Uodd(basis);
  u.set_label("U~_1");
  return u;
}

Operator build_Ufree(std::shared_ptr<const FockBasis> basis) {
  const auto& cfg = basis->lattice();
  if (cfg.nu() != 3) throw std::invalid_argument("U_free is defined for nu = 3");
  require_full(*basis, "U_free");
  const std::uint32_t mask = site_mask(
      cfg, [&](const std::vector<int>& c) { return mod_positive(c[1], 2) == 1; });
  return diagonal_phase(basis, mask, cd(0.0, -1.0), "U_free");
}

Operator build_gauge_move(std::shared_ptr<const FockBasis> basis, int j) {
  const auto& cfg = basis->lattice();
  if (j < 2 || j > cfg.nu()) throw std::out_of_range("gauge move needs 2 <= j <= nu");
  require_full(*basis, "U_HA");
  // product over i < j of U_HA(j, i); all factors are diagonal signs
  Operator u = Operator::identity(basis, "");
  for (int i = j - 1; i >= 1; --i) {
    const std::uint32_t mask = site_mask(cfg, [&](const std::vector<int>& c) {
      return mod_positive(c[j - 1], 2) == 1 && mod_positive(c[i - 1], 2) == 1;
    });
    u = u * diagonal_phase(basis, mask, cd(-1.0, 0.0), "");
  }
  u.set_label("U_HA(" + std::to_string(j) + "->1)");
  return u;
}

Operator build_boundary_move(std::shared_ptr<const FockBasis> basis, int axis, int l) {
  const auto& cfg = basis->lattice();
  if (axis < 1 || axis > cfg.nu()) throw std::out_of_range("axis out of range");
  if (l < -cfg.half_length() + 1 || l > cfg.half_length())
    throw std::out_of_range("slab edge outside the lattice");
  require_full(*basis, "U_BC");
  const std::uint32_t mask = site_mask(cfg, [&](const std::vector<int>& c) {
    return c[axis - 1] >= l && c[axis - 1] <= cfg.half_length();
  });
  return diagonal_phase(basis, mask, cd(-1.0, 0.0),
                        "U_BC(" + std::to_string(axis) + "," + std::to_string(l) + ")");
}

Operator conjugated(const Operator& U, const Operator& A) { return U.adjoint() * A * U; }

ReflectionMap::ReflectionMap(const LatticeConfig& cfg, int axis, int offset)
    : cfg_(cfg), axis_(axis), offset_(offset) {
  if (axis < 1 || axis > cfg.nu()) throw std::out_of_range("axis out of range");
  if (offset < -cfg.half_length() + 1 || offset > cfg.half_length())
    throw std::out_of_range("hyperplane offset outside the lattice");
  const int L = cfg.half_length();
  minus_.resize(cfg.volume());
  image_.resize(cfg.volume());
  for (std::size_t x = 0; x < cfg.volume(); ++x) {
    auto c = cfg.coords(x);
    const int d = mod_positive(offset - c[axis - 1], 2 * L);
    minus_[x] = d < L;
    const int reflected = 2 * offset + 1 - c[axis - 1];
    c[axis - 1] = mod_positive(reflected - (-L + 1), 2 * L) + (-L + 1);
    image_[x] = cfg.flat_index(c);
  }
  for (std::size_t x = 0; x < cfg.volume(); ++x) {
    if (image_[image_[x]] != x || minus_[x] == minus_[image_[x]])
      throw std::logic_error("reflection is not an involution swapping the halves");
  }
}

std::vector<std::size_t> ReflectionMap::minus_sites() const {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < minus_.size(); ++x)
    if (minus_[x]) out.push_back(x);
  return out;
}

FermionPolynomial reflect_polynomial(const ReflectionMap& map,
                                     const FermionPolynomial& poly) {
  bool seen_minus = false;
  bool seen_plus = false;
  for (const auto& t : poly.terms())
    for (const auto& f : t.word)
      (map.in_minus(f.site) ? seen_minus : seen_plus) = true;
  if (seen_minus && seen_plus)
    throw std::invalid_argument("support straddles the reflection hyperplane");
  FermionPolynomial out;
  for (const auto& t : poly.terms()) {
    std::vector<FermionFactor> word;
    word.reserve(t.word.size());
    for (const auto& f : t.word) word.push_back({map.reflect(f.site), f.dagger});
    out.add_term(std::conj(t.coeff), std::move(word));
  }
  return out;
}

FermionPolynomial density_polynomial(std::size_t site) {
  FermionPolynomial p;
  p.add_term(1.0, {{site, true}, {site, false}});
  p.add_term(-0.5, {});
  return p;
}

FermionPolynomial random_even_polynomial(const ReflectionMap& map,
                                         std::mt19937_64& rng) {
  const auto sites = map.minus_sites();
  std::uniform_int_distribution<int> n_terms(1, 4);
  std::uniform_int_distribution<int> half_degree(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, sites.size() - 1);
  std::bernoulli_distribution dag(0.5);
  std::normal_distribution<double> coeff(0.0, 1.0);
  FermionPolynomial p;
  const int terms = n_terms(rng);
  for (int t = 0; t < terms; ++t) {
    const int degree = 2 * half_degree(rng);
    std::vector<FermionFactor> word;
    word.reserve(degree);
    for (int k = 0; k < degree; ++k) word.push_back({sites[pick(rng)], dag(rng)});
    p.add_term(coeff(rng), std::move(word));
  }
  return p;
}

ReflectionPositivityReport reflection_positivity_check(
    std::shared_ptr<const FockBasis> basis, const ReflectionMap& map, int samples,
    std::uint64_t seed, double tol) {
  require_full(*basis, "reflection positivity check");
  std::mt19937_64 rng(seed);
  ReflectionPositivityReport report;
  report.samples = samples;
  report.min_trace = std::numeric_limits<double>::infinity();
  report.max_abs_imag = 0.0;
  for (int i = 0; i < samples; ++i) {
    const FermionPolynomial a = random_even_polynomial(map, rng);
    const FermionPolynomial ra = reflect_polynomial(map, a);
    const cd t = (to_operator(basis, a) * to_operator(basis, ra)).trace();
    report.min_trace = std::min(report.min_trace, t.real());
    report.max_abs_imag = std::max(report.max_abs_imag, std::abs(t.imag()));
  }
  report.all_nonnegative = report.min_trace >= -tol && report.max_abs_imag <= tol;

  // odd-parity draws: recorded for inspection only
  const auto sites = map.minus_sites();
  std::uniform_int_distribution<std::size_t> pick(0, sites.size() - 1);
  std::bernoulli_distribution dag(0.5);
  std::normal_distribution<double> coeff(0.0, 1.0);
  for (int i = 0; i < std::max(1, samples / 20); ++i) {
    FermionPolynomial p;
    std::vector<FermionFactor> word{{sites[pick(rng)], dag(rng)}};
    if (i % 2 == 1) {
      word.push_back({sites[pick(rng)], dag(rng)});
      word.push_back({sites[pick(rng)], dag(rng)});
    }
    p.add_term(coeff(rng), std::move(word));
    const FermionPolynomial rp = reflect_polynomial(map, p);
    const cd t = (to_operator(basis, p) * to_operator(basis, rp)).trace();
    report.odd_log.push_back({t.real(), t.imag()});
  }
  return report;
}

}  // namespace njl
