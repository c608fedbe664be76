#include "njl/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace njl {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// short anchor text per bound family, used in the CSV header
const std::map<std::string, std::string>& bound_anchors() {
  static const std::map<std::string, std::string> anchors = {
      {"sum_rule", "Plancherel: symmetrized mode sum equals |Lambda|/2"},
      {"gaussian_domination", "partition function is maximal at zero deformation field"},
      {"infrared", "Duhamel mode correlation below 1/(2 beta g E_{p+Q})"},
      {"c_p", "double commutator within [0, 8|kappa|nu]"},
      {"dls_coth", "symmetrized correlation below the coth bound"},
      {"dls_linear", "symmetrized correlation below the linearized bound"},
      {"lro_chain", "momentum-sum chain bounding the order parameter"},
  };
  return anchors;
}

std::string anchor_for(const std::string& name) {
  for (const auto& [prefix, text] : bound_anchors())
    if (name.rfind(prefix, 0) == 0) return text;
  return "";
}

ScanRecord run_point(const ScanConfig& config, const ScanConfig::LatticePoint& lat,
                     double g, double kappa, double beta, double mass,
                     std::uint64_t point_seed) {
  ScanRecord rec;
  rec.nu = lat.nu;
  rec.L = lat.L;
  rec.g = g;
  rec.kappa = kappa;
  rec.beta = beta;
  rec.mass = mass;
  rec.seed = point_seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const LatticeConfig cfg(lat.nu, lat.L);
    auto basis = FockBasis::full(cfg);  // throws past the dimension cap
    ModelParams params{kappa, mass, g, beta};
    params.validate();

    const bool run_identities =
        config.suite == Suite::identities || config.suite == Suite::all;
    const bool run_bounds = config.suite == Suite::bounds || config.suite == Suite::all;
    const bool run_continuum =
        config.suite == Suite::continuum || config.suite == Suite::all;

    if (run_identities) {
      if (basis->sites() <= config.identity_site_cap) {
        auto algebra = verify::algebra_checks(cfg);
        rec.checks.insert(rec.checks.end(), algebra.begin(), algebra.end());
        auto sym = verify::symmetry_checks(cfg, params, point_seed);
        rec.checks.insert(rec.checks.end(), sym.begin(), sym.end());
        const ReflectionMap map(cfg);
        const auto rp =
            reflection_positivity_check(basis, map, config.rp_samples, point_seed);
        rec.checks.push_back(verify::make_check(
            "reflection_positivity", std::max(-rp.min_trace, rp.max_abs_imag), 1e-10));
      } else {
        rec.checks.push_back(verify::make_check("identity_suite_skipped_lattice_size",
                                                0.0, 0.0));
      }
    }

    if (run_bounds) {
      const Operator h = build_hamiltonian(basis, params);
      auto dec = std::make_shared<SpectralDecomposition>(diagonalize(h));
      const ThermalState state = make_thermal(dec, params);
      rec.log_z = state.log_partition();
      rec.ground_energy = dec->ground_energy();
      rec.energy = thermal_expectation(state, h).real();
      if (mass == 0.0) {
        rec.m_lro = lro_parameter(state, basis);
      } else if (mass > 0.0) {
        rec.order_per_site = spontaneous_magnetization(basis, params);
      }
      rec.bounds = verify::bound_battery(basis, params, point_seed,
                                         config.gaussian_draws, config.tolerance);
      if (mass == 0.0 && g > 0.0) {
        for (const auto& p : density_momenta(cfg))
          rec.c_table.push_back(double_commutator(state, basis, p));
      }
    }

    if (run_continuum) {
      auto cont = verify::continuum_checks(cfg, kappa, mass, beta);
      rec.checks.insert(rec.checks.end(), cont.begin(), cont.end());
    }
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.error = e.what();
  }
  rec.all_ok = verify::all_ok(rec.checks) && verify::all_ok(rec.bounds);
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rec;
}

}  // namespace

Suite suite_from_string(const std::string& name) {
  if (name == "identities") return Suite::identities;
  if (name == "bounds") return Suite::bounds;
  if (name == "continuum") return Suite::continuum;
  if (name == "all") return Suite::all;
  throw std::invalid_argument("unknown suite: " + name);
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::identities: return "identities";
    case Suite::bounds: return "bounds";
    case Suite::continuum: return "continuum";
    case Suite::all: return "all";
  }
  return "all";
}

ScanConfig ScanConfig::from_json(const std::string& text) {
  const json j = json::parse(text);
  ScanConfig c;
  if (j.contains("lattices")) {
    c.lattices.clear();
    for (const auto& l : j.at("lattices"))
      c.lattices.push_back({l.at("nu").get<int>(), l.at("L").get<int>()});
  }
  auto grid = [&](const char* key, std::vector<double>& target) {
    if (!j.contains(key)) return;
    target.clear();
    if (j.at(key).is_array())
      for (const auto& v : j.at(key)) target.push_back(v.get<double>());
    else
      target.push_back(j.at(key).get<double>());
  };
  grid("g", c.g);
  grid("kappa", c.kappa);
  grid("beta", c.beta);
  grid("mass", c.mass);
  if (j.contains("suite")) c.suite = suite_from_string(j.at("suite").get<std::string>());
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
  if (j.contains("out")) c.out_path = j.at("out").get<std::string>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("record_timing")) c.record_timing = j.at("record_timing").get<bool>();
  if (j.contains("gaussian_draws")) c.gaussian_draws = j.at("gaussian_draws").get<int>();
  if (j.contains("rp_samples")) c.rp_samples = j.at("rp_samples").get<int>();
  if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  if (j.contains("identity_site_cap"))
    c.identity_site_cap = j.at("identity_site_cap").get<int>();
  if (c.format != "csv" && c.format != "jsonl")
    throw std::invalid_argument("format must be csv or jsonl");
  return c;
}

ScanConfig ScanConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

ScanResult run_scan(const ScanConfig& config) {
  struct Point {
    ScanConfig::LatticePoint lat;
    double g, kappa, beta, mass;
    std::uint64_t seed;
  };
  std::vector<Point> points;
  std::uint64_t index = 0;
  for (const auto& lat : config.lattices)
    for (double g : config.g)
      for (double kappa : config.kappa)
        for (double beta : config.beta)
          for (double mass : config.mass)
            points.push_back({lat, g, kappa, beta, mass, mix_seed(config.seed, index++)});

  ScanResult result;
  result.records.resize(points.size());
  const int threads =
      std::max(1, std::min<int>(config.threads, static_cast<int>(points.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      result.records[i] = run_point(config, p.lat, p.g, p.kappa, p.beta, p.mass, p.seed);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= points.size()) return;
          const auto& p = points[i];
          result.records[i] =
              run_point(config, p.lat, p.g, p.kappa, p.beta, p.mass, p.seed);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& rec : result.records)
    if (rec.status == "ok" && !rec.all_ok) result.all_ok = false;
  return result;
}

namespace {

void write_bound_json(std::ostream& out, const BoundReport& r) {
  out << "{\"name\":\"" << json_escape(r.name) << "\",\"lhs\":" << fmt17(r.lhs)
      << ",\"rhs\":" << fmt17(r.rhs) << ",\"ok\":" << (r.satisfied ? "true" : "false")
      << ",\"slack\":" << fmt17(r.slack);
  if (!r.note.empty()) out << ",\"note\":\"" << json_escape(r.note) << "\"";
  out << "}";
}

void write_check_json(std::ostream& out, const verify::Check& c) {
  out << "{\"name\":\"" << json_escape(c.name) << "\",\"error\":" << fmt17(c.error)
      << ",\"tol\":" << fmt17(c.tol) << ",\"ok\":" << (c.ok ? "true" : "false") << "}";
}

}  // namespace

void emit_jsonl(const std::vector<ScanRecord>& records, const ScanConfig& config,
                std::ostream& out) {
  for (const auto& r : records) {
    out << "{\"nu\":" << r.nu << ",\"L\":" << r.L << ",\"g\":" << fmt17(r.g)
        << ",\"kappa\":" << fmt17(r.kappa) << ",\"beta\":" << fmt17(r.beta)
        << ",\"mass\":" << fmt17(r.mass) << ",\"seed\":" << r.seed << ",\"status\":\""
        << json_escape(r.status) << "\"";
    if (!r.error.empty()) out << ",\"error\":\"" << json_escape(r.error) << "\"";
    if (r.status == "ok") {
      out << ",\"log_z\":" << fmt17(r.log_z) << ",\"energy\":" << fmt17(r.energy)
          << ",\"ground_energy\":" << fmt17(r.ground_energy)
          << ",\"m_lro\":" << fmt17(r.m_lro)
          << ",\"order_per_site\":" << fmt17(r.order_per_site);
      out << ",\"c_table\":[";
      for (std::size_t i = 0; i < r.c_table.size(); ++i)
        out << (i ? "," : "") << fmt17(r.c_table[i]);
      out << "]";
      out << ",\"checks\":[";
      for (std::size_t i = 0; i < r.checks.size(); ++i) {
        if (i) out << ",";
        write_check_json(out, r.checks[i]);
      }
      out << "],\"bounds\":[";
      for (std::size_t i = 0; i < r.bounds.size(); ++i) {
        if (i) out << ",";
        write_bound_json(out, r.bounds[i]);
      }
      out << "]";
    }
    out << ",\"all_ok\":" << (r.all_ok ? "true" : "false");
    if (config.record_timing) out << ",\"wall_ms\":" << fmt17(r.wall_ms);
    out << "}\n";
  }
}

void emit_csv(const std::vector<ScanRecord>& records, const ScanConfig& config,
              std::ostream& out) {
  // union of bound names over the run, in first-appearance order
  std::vector<std::string> bound_names;
  for (const auto& r : records)
    for (const auto& b : r.bounds)
      if (std::find(bound_names.begin(), bound_names.end(), b.name) == bound_names.end())
        bound_names.push_back(b.name);

  out << "# bounds:";
  bool first = true;
  for (const auto& name : bound_names) {
    const std::string anchor = anchor_for(name);
    out << (first ? " " : "; ") << name;
    if (!anchor.empty()) out << " = " << anchor;
    first = false;
  }
  out << "\n";

  out << "nu,L,g,kappa,beta,mass,seed,status,error,log_z,energy,ground_energy,m_lro,"
         "order_per_site,c_table,checks_ok,all_ok";
  for (const auto& name : bound_names)
    out << "," << name << "_lhs," << name << "_rhs," << name << "_ok," << name
        << "_slack";
  if (config.record_timing) out << ",wall_ms";
  out << "\n";

  auto csv_quote = [](std::string s) {
    for (std::size_t pos = 0; (pos = s.find('"', pos)) != std::string::npos; pos += 2)
      s.insert(pos, 1, '"');
    return s;
  };
  for (const auto& r : records) {
    out << r.nu << "," << r.L << "," << fmt17(r.g) << "," << fmt17(r.kappa) << ","
        << fmt17(r.beta) << "," << fmt17(r.mass) << "," << r.seed << "," << r.status
        << ",\"" << csv_quote(r.error) << "\"," << fmt17(r.log_z) << "," << fmt17(r.energy) << ","
        << fmt17(r.ground_energy) << "," << fmt17(r.m_lro) << ","
        << fmt17(r.order_per_site) << ",\"[";
    for (std::size_t i = 0; i < r.c_table.size(); ++i)
      out << (i ? "," : "") << fmt17(r.c_table[i]);
    out << "]\"," << (verify::all_ok(r.checks) ? "true" : "false") << ","
        << (r.all_ok ? "true" : "false");
    for (const auto& name : bound_names) {
      const BoundReport* found = nullptr;
      for (const auto& b : r.bounds)
        if (b.name == name) {
          found = &b;
          break;
        }
      if (found)
        out << "," << fmt17(found->lhs) << "," << fmt17(found->rhs) << ","
            << (found->satisfied ? "true" : "false") << "," << fmt17(found->slack);
      else
        out << ",,,,";
    }
    if (config.record_timing) out << "," << fmt17(r.wall_ms);
    out << "\n";
  }
}

void emit(const ScanResult& result, const ScanConfig& config) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!config.out_path.empty() && config.out_path != "-") {
    file.open(config.out_path);
    if (!file) throw std::runtime_error("cannot write output: " + config.out_path);
    out = &file;
  }
  if (config.format == "csv")
    emit_csv(result.records, config, *out);
  else
    emit_jsonl(result.records, config, *out);
}

}  // namespace njl
