#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "njl/continuum.hpp"
#include "njl/scan.hpp"

namespace py = pybind11;
using namespace njl;

namespace {

ThermalState thermal_from_params(std::shared_ptr<const FockBasis> basis,
                                 const ModelParams& params) {
  const Operator h = build_hamiltonian(basis, params);
  auto dec = std::make_shared<SpectralDecomposition>(diagonalize(h));
  return make_thermal(dec, params);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact diagonalization for the staggered-fermion lattice model";

  py::class_<LatticeConfig>(m, "LatticeConfig")
      .def(py::init<int, int>(), py::arg("nu"), py::arg("L"))
      .def_property_readonly("nu", &LatticeConfig::nu)
      .def_property_readonly("L", &LatticeConfig::half_length)
      .def_property_readonly("volume", &LatticeConfig::volume)
      .def("coords",
           [](const LatticeConfig& cfg, std::size_t i) { return cfg.coords(i); })
      .def("flat_index",
           [](const LatticeConfig& cfg, const std::vector<int>& c) {
             return cfg.flat_index(c);
           })
      .def("neighbor", &LatticeConfig::neighbor, py::arg("index"), py::arg("mu"),
           py::arg("step") = 1)
      .def("__repr__", [](const LatticeConfig& cfg) {
        return "LatticeConfig(nu=" + std::to_string(cfg.nu()) +
               ", L=" + std::to_string(cfg.half_length()) + ")";
      });

  m.def("parity_sign",
        [](const LatticeConfig& cfg, std::size_t i) { return parity_sign(cfg, i); });
  m.def("staggered_phase", [](const LatticeConfig& cfg, std::size_t i, int mu) {
    return staggered_phase(cfg, i, mu);
  });

  py::enum_<MomentumGrid>(m, "MomentumGrid")
      .value("density", MomentumGrid::density)
      .value("fermion", MomentumGrid::fermion);

  py::class_<Momentum>(m, "Momentum")
      .def(py::init<MomentumGrid, std::vector<int>, int>(), py::arg("grid"),
           py::arg("labels"), py::arg("L"))
      .def_property_readonly("grid", &Momentum::grid)
      .def_property_readonly("labels", &Momentum::labels)
      .def("components", &Momentum::components)
      .def("negated", &Momentum::negated)
      .def("shifted_by_Q", &Momentum::shifted_by_Q)
      .def("shifted_by_pi", &Momentum::shifted_by_pi, py::arg("axis"))
      .def("is_Q", &Momentum::is_Q);

  m.def("density_momenta", &density_momenta);
  m.def("fermion_momenta", &fermion_momenta);
  m.def("momentum_Q", &momentum_Q);
  m.def("dispersion", py::overload_cast<const Momentum&>(&dispersion));

  py::class_<FockBasis, std::shared_ptr<FockBasis>>(m, "FockBasis")
      .def_static("full",
                  [](const LatticeConfig& cfg) {
                    return std::const_pointer_cast<FockBasis>(FockBasis::full(cfg));
                  })
      .def_static("number_sector",
                  [](const LatticeConfig& cfg, int n) {
                    return std::const_pointer_cast<FockBasis>(
                        FockBasis::number_sector(cfg, n));
                  })
      .def_property_readonly("dim", &FockBasis::dim)
      .def_property_readonly("sites", &FockBasis::sites)
      .def_property_readonly(
          "sector", [](const FockBasis& b) { return b.sector(); })
      .def("state", &FockBasis::state)
      .def("index_of", &FockBasis::index_of);

  py::class_<Operator>(m, "Operator")
      .def_property_readonly("label", &Operator::label)
      .def_property_readonly("shape",
                             [](const Operator& op) {
                               return std::make_pair(op.rows(), op.cols());
                             })
      .def("dense", &Operator::dense)
      .def("adjoint", &Operator::adjoint)
      .def("trace", &Operator::trace)
      .def("max_abs", &Operator::max_abs)
      .def("hermiticity_error", &Operator::hermiticity_error)
      .def("__add__", [](const Operator& a, const Operator& b) { return a + b; })
      .def("__sub__", [](const Operator& a, const Operator& b) { return a - b; })
      .def("__matmul__", [](const Operator& a, const Operator& b) { return a * b; })
      .def("__mul__", [](const Operator& a, cd s) { return a * s; })
      .def("__rmul__", [](const Operator& a, cd s) { return a * s; })
      .def("__neg__", [](const Operator& a) { return -a; });

  m.def("commutator", &commutator);
  m.def("anticommutator", &anticommutator);
  m.def("max_abs_diff", &max_abs_diff);

  m.def("annihilator", &annihilator);
  m.def("creator", &creator);
  m.def("number_op", &number_op);
  m.def("total_number", &total_number);
  m.def("charge_density", &charge_density);
  py::enum_<MajoranaKind>(m, "MajoranaKind")
      .value("xi", MajoranaKind::xi)
      .value("eta", MajoranaKind::eta);
  m.def("majorana", &majorana);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double kappa, double m, double g, double beta) {
             ModelParams p{kappa, m, g, beta};
             p.validate();
             return p;
           }),
           py::arg("kappa") = 0.0, py::arg("m") = 0.0, py::arg("g") = 0.0,
           py::arg("beta") = 1.0)
      .def_readwrite("kappa", &ModelParams::kappa)
      .def_readwrite("m", &ModelParams::m)
      .def_readwrite("g", &ModelParams::g)
      .def_readwrite("beta", &ModelParams::beta);

  py::class_<FieldH>(m, "FieldH")
      .def(py::init<const LatticeConfig&>())
      .def_static("random",
                  [](const LatticeConfig& cfg, std::uint64_t seed, double amplitude) {
                    std::mt19937_64 rng(seed);
                    return FieldH::random(cfg, rng, amplitude);
                  },
                  py::arg("cfg"), py::arg("seed"), py::arg("amplitude") = 1.0)
      .def("at", py::overload_cast<int, std::size_t>(&FieldH::at, py::const_))
      .def("set", [](FieldH& h, int mu, std::size_t x, double v) { h.at(mu, x) = v; });

  m.def("build_hamiltonian", &build_hamiltonian);
  m.def("build_hopping", &build_hopping);
  m.def("build_hopping_direction", &build_hopping_direction);
  m.def("build_order_parameter", &build_order_parameter);
  m.def("build_interaction", &build_interaction);
  m.def("build_deformed", &build_deformed);
  m.def("build_free_nu3", &build_free_nu3);
  m.def("build_general_interaction", &build_general_interaction, py::arg("basis"),
        py::arg("ghat"), py::arg("enforce_support") = false, py::arg("eps0") = 0.0);
  m.def("one_particle_hopping", &one_particle_hopping);

  m.def("build_particle_hole", &build_particle_hole);
  m.def("build_U1", &build_U1);
  m.def("build_Uodd", &build_Uodd);
  m.def("build_Utilde1", &build_Utilde1);
  m.def("build_Ufree", &build_Ufree);
  m.def("build_gauge_move", &build_gauge_move);
  m.def("build_boundary_move", &build_boundary_move);
  m.def("conjugated", &conjugated);

  py::class_<ReflectionMap>(m, "ReflectionMap")
      .def(py::init<const LatticeConfig&, int, int>(), py::arg("cfg"),
           py::arg("axis") = 1, py::arg("offset") = 0)
      .def("in_minus", &ReflectionMap::in_minus)
      .def("reflect", &ReflectionMap::reflect)
      .def("minus_sites", &ReflectionMap::minus_sites);

  py::class_<ReflectionPositivityReport>(m, "ReflectionPositivityReport")
      .def_readonly("samples", &ReflectionPositivityReport::samples)
      .def_readonly("min_trace", &ReflectionPositivityReport::min_trace)
      .def_readonly("max_abs_imag", &ReflectionPositivityReport::max_abs_imag)
      .def_readonly("all_nonnegative", &ReflectionPositivityReport::all_nonnegative);
  m.def("reflection_positivity_check", &reflection_positivity_check, py::arg("basis"),
        py::arg("map"), py::arg("samples"), py::arg("seed"), py::arg("tol") = 1e-10);

  py::class_<SpectralDecomposition, std::shared_ptr<SpectralDecomposition>>(
      m, "SpectralDecomposition")
      .def_property_readonly("ground_energy", &SpectralDecomposition::ground_energy)
      .def("all_eigenvalues", &SpectralDecomposition::all_eigenvalues)
      .def("reconstruction_error", &SpectralDecomposition::reconstruction_error);

  m.def(
      "diagonalize",
      [](const Operator& h) {
        return std::make_shared<SpectralDecomposition>(diagonalize(h));
      },
      py::arg("H"));

  py::class_<ThermalState>(m, "ThermalState")
      .def_property_readonly("beta", &ThermalState::beta)
      .def_property_readonly("log_partition", &ThermalState::log_partition);
  m.def("make_thermal",
        [](std::shared_ptr<SpectralDecomposition> dec, const ModelParams& params) {
          return make_thermal(dec, params);
        });
  m.def("thermal_state", &thermal_from_params,
        "Build H, diagonalize and assemble the thermal state in one step");

  m.def("thermal_expectation", &thermal_expectation);
  m.def("ground_expectation",
        [](std::shared_ptr<SpectralDecomposition> dec, const Operator& a, double tol) {
          return ground_expectation(*dec, a, tol);
        },
        py::arg("dec"), py::arg("A"), py::arg("degeneracy_tol") = 1e-8);
  m.def("duhamel", &duhamel);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("name", &BoundReport::name)
      .def_readonly("lhs", &BoundReport::lhs)
      .def_readonly("rhs", &BoundReport::rhs)
      .def_readonly("satisfied", &BoundReport::satisfied)
      .def_readonly("slack", &BoundReport::slack)
      .def_readonly("note", &BoundReport::note)
      .def("__repr__", [](const BoundReport& r) {
        return "BoundReport(" + r.name + ": lhs=" + std::to_string(r.lhs) +
               " rhs=" + std::to_string(r.rhs) + (r.satisfied ? " ok" : " VIOLATED") +
               ")";
      });

  m.def("rho_mode", &rho_mode);
  m.def("lro_parameter", &lro_parameter);
  m.def("sum_rule_check", &sum_rule_check, py::arg("state"), py::arg("basis"),
        py::arg("tol") = 1e-9);
  m.def("gaussian_domination_check", &gaussian_domination_check, py::arg("basis"),
        py::arg("params"), py::arg("field"), py::arg("tol") = 1e-8);
  m.def("double_commutator", &double_commutator);
  m.def("infrared_check", &infrared_check, py::arg("state"), py::arg("basis"),
        py::arg("p"), py::arg("tol") = 1e-8);

  py::class_<DlsReports>(m, "DlsReports")
      .def_readonly("coth_form", &DlsReports::coth_form)
      .def_readonly("linear_form", &DlsReports::linear_form)
      .def_readonly("c_p", &DlsReports::c_p);
  m.def("dls_check", &dls_check, py::arg("state"), py::arg("basis"), py::arg("p"),
        py::arg("tol") = 1e-8);

  py::class_<LroChainReport>(m, "LroChainReport")
      .def_readonly("sym_sum_avg", &LroChainReport::sym_sum_avg)
      .def_readonly("rhs_p_sum", &LroChainReport::rhs_p_sum)
      .def_readonly("q_term", &LroChainReport::q_term)
      .def_readonly("chain_ok", &LroChainReport::chain_ok)
      .def_readonly("mlro_sq", &LroChainReport::mlro_sq)
      .def_readonly("mlro_sq_lower", &LroChainReport::mlro_sq_lower)
      .def_readonly("certificate_positive", &LroChainReport::certificate_positive)
      .def_readonly("c_table", &LroChainReport::c_table);
  m.def("lro_chain", &lro_chain, py::arg("state"), py::arg("basis"),
        py::arg("tol") = 1e-8);
  m.def("spontaneous_magnetization", &spontaneous_magnetization, py::arg("basis"),
        py::arg("params"), py::arg("degeneracy_tol") = 1e-8);

  // continuum analysis
  auto c = m.def_submodule("continuum");
  c.def("one_particle_spectrum", &continuum::one_particle_spectrum);
  c.def("folded_closed_form_spectrum", &continuum::folded_closed_form_spectrum);
  py::class_<continuum::DispersionReport>(c, "DispersionReport")
      .def_readonly("max_abs_diff", &continuum::DispersionReport::max_abs_diff)
      .def_readonly("ok", &continuum::DispersionReport::ok);
  c.def("dispersion_check", &continuum::dispersion_check, py::arg("cfg"),
        py::arg("kappa"), py::arg("m"), py::arg("tol") = 1e-10);
  c.def("gamma0", &continuum::gamma0);
  c.def("gamma5", &continuum::gamma5);
  c.def("assembly_up", &continuum::assembly_up);
  c.def("assembly_down", &continuum::assembly_down);
  c.def("gamma_identities_exact", &continuum::gamma_identities_exact);
  py::class_<continuum::DiracFormReport>(c, "DiracFormReport")
      .def_readonly("matrix_residual", &continuum::DiracFormReport::matrix_residual)
      .def_readonly("eigenpair_residual",
                    &continuum::DiracFormReport::eigenpair_residual)
      .def_readonly("cross_block", &continuum::DiracFormReport::cross_block)
      .def_readonly("energies", &continuum::DiracFormReport::energies);
  c.def("dirac_form_check", &continuum::dirac_form_check);
  py::class_<continuum::ChiralSelectionReport>(c, "ChiralSelectionReport")
      .def_readonly("max_opposite", &continuum::ChiralSelectionReport::max_opposite)
      .def_readonly("max_same", &continuum::ChiralSelectionReport::max_same)
      .def_readonly("pairs_checked", &continuum::ChiralSelectionReport::pairs_checked);
  c.def("chiral_selection_check", &continuum::chiral_selection_check);
  py::class_<continuum::SgnRuleReport>(c, "SgnRuleReport")
      .def_readonly("tuples_total", &continuum::SgnRuleReport::tuples_total)
      .def_readonly("conserving", &continuum::SgnRuleReport::conserving)
      .def_readonly("violations", &continuum::SgnRuleReport::violations)
      .def_readonly("ok", &continuum::SgnRuleReport::ok);
  c.def("sgn_selection_rule", &continuum::sgn_selection_rule);
  py::class_<continuum::QuadratureSpec>(c, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("base_resolution", &continuum::QuadratureSpec::base_resolution)
      .def_readwrite("levels", &continuum::QuadratureSpec::levels);
  py::class_<continuum::IntegralEstimate>(c, "IntegralEstimate")
      .def_readonly("value", &continuum::IntegralEstimate::value)
      .def_readonly("error", &continuum::IntegralEstimate::error)
      .def_readonly("converged", &continuum::IntegralEstimate::converged)
      .def_readonly("order", &continuum::IntegralEstimate::order)
      .def_readonly("ladder", &continuum::IntegralEstimate::ladder);
  c.def("bz_integral", &continuum::bz_integral, py::arg("kind"), py::arg("nu"),
        py::arg("spec") = continuum::QuadratureSpec{});
  py::class_<continuum::RegionCertificate>(c, "RegionCertificate")
      .def_readonly("lower_bound", &continuum::RegionCertificate::lower_bound)
      .def_readonly("positive", &continuum::RegionCertificate::positive)
      .def_readonly("threshold_kappa_over_g",
                    &continuum::RegionCertificate::threshold_kappa_over_g)
      .def_readonly("finite_beta", &continuum::RegionCertificate::finite_beta);
  c.def(
      "theorem_region",
      [](double kappa, double g, std::optional<double> beta, int nu) {
        return continuum::theorem_region(kappa, g, beta, nu);
      },
      py::arg("kappa"), py::arg("g"), py::arg("beta"), py::arg("nu"));

  // scans
  py::enum_<Suite>(m, "Suite")
      .value("identities", Suite::identities)
      .value("bounds", Suite::bounds)
      .value("continuum", Suite::continuum)
      .value("all", Suite::all);

  py::class_<ScanConfig::LatticePoint>(m, "LatticePoint")
      .def(py::init<int, int>(), py::arg("nu"), py::arg("L"))
      .def_readwrite("nu", &ScanConfig::LatticePoint::nu)
      .def_readwrite("L", &ScanConfig::LatticePoint::L);

  py::class_<ScanConfig>(m, "ScanConfig")
      .def(py::init<>())
      .def_static("from_json", &ScanConfig::from_json)
      .def_static("from_json_file", &ScanConfig::from_json_file)
      .def_readwrite("lattices", &ScanConfig::lattices)
      .def_readwrite("g", &ScanConfig::g)
      .def_readwrite("kappa", &ScanConfig::kappa)
      .def_readwrite("beta", &ScanConfig::beta)
      .def_readwrite("mass", &ScanConfig::mass)
      .def_readwrite("suite", &ScanConfig::suite)
      .def_readwrite("seed", &ScanConfig::seed)
      .def_readwrite("tolerance", &ScanConfig::tolerance)
      .def_readwrite("out_path", &ScanConfig::out_path)
      .def_readwrite("format", &ScanConfig::format)
      .def_readwrite("record_timing", &ScanConfig::record_timing)
      .def_readwrite("gaussian_draws", &ScanConfig::gaussian_draws)
      .def_readwrite("rp_samples", &ScanConfig::rp_samples)
      .def_readwrite("threads", &ScanConfig::threads);

  py::class_<verify::Check>(m, "Check")
      .def_readonly("name", &verify::Check::name)
      .def_readonly("error", &verify::Check::error)
      .def_readonly("tol", &verify::Check::tol)
      .def_readonly("ok", &verify::Check::ok);

  py::class_<ScanRecord>(m, "ScanRecord")
      .def_readonly("nu", &ScanRecord::nu)
      .def_readonly("L", &ScanRecord::L)
      .def_readonly("g", &ScanRecord::g)
      .def_readonly("kappa", &ScanRecord::kappa)
      .def_readonly("beta", &ScanRecord::beta)
      .def_readonly("mass", &ScanRecord::mass)
      .def_readonly("seed", &ScanRecord::seed)
      .def_readonly("status", &ScanRecord::status)
      .def_readonly("error", &ScanRecord::error)
      .def_readonly("log_z", &ScanRecord::log_z)
      .def_readonly("energy", &ScanRecord::energy)
      .def_readonly("ground_energy", &ScanRecord::ground_energy)
      .def_readonly("m_lro", &ScanRecord::m_lro)
      .def_readonly("order_per_site", &ScanRecord::order_per_site)
      .def_readonly("c_table", &ScanRecord::c_table)
      .def_readonly("checks", &ScanRecord::checks)
      .def_readonly("bounds", &ScanRecord::bounds)
      .def_readonly("all_ok", &ScanRecord::all_ok);

  py::class_<ScanResult>(m, "ScanResult")
      .def_readonly("records", &ScanResult::records)
      .def_readonly("all_ok", &ScanResult::all_ok);
  m.def("run_scan", &run_scan);

  m.def("algebra_checks", &verify::algebra_checks, py::arg("cfg"),
        py::arg("tol") = 1e-12);
  m.def("symmetry_checks", &verify::symmetry_checks, py::arg("cfg"), py::arg("params"),
        py::arg("seed"), py::arg("tol") = 1e-10);
  m.def("continuum_checks", &verify::continuum_checks, py::arg("cfg"), py::arg("kappa"),
        py::arg("m"), py::arg("beta"), py::arg("tol") = 1e-10);
  m.def("bound_battery", &verify::bound_battery, py::arg("basis"), py::arg("params"),
        py::arg("seed"), py::arg("gaussian_draws"), py::arg("tol") = 1e-8);
}
