#include <CLI11.hpp>
#include <iostream>

#include "njl/scan.hpp"

// Batch driver: enumerate parameter points, run the selected verification
// suites, persist the records. Exit status 1 when a theorem-backed inequality
// fails beyond tolerance, 2 on bad usage.
int main(int argc, char** argv) {
  CLI::App app{"Exact-diagonalization scans for the staggered-fermion lattice model"};

  std::string config_path;
  std::string suite;
  std::vector<int> nu, L;
  std::vector<double> g, kappa, beta, mass;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  bool have_seed = false;
  double tolerance = 0.0;
  bool have_tolerance = false;
  int threads = 0;
  bool timing = false;

  app.add_option("--config", config_path, "JSON config file; flags override it");
  app.add_option("--suite", suite, "identities|bounds|continuum|all");
  app.add_option("--nu", nu, "lattice dimension(s)");
  app.add_option("--L", L, "half side length(s); the box is [-L+1, L]^nu");
  app.add_option("--g", g, "coupling grid");
  app.add_option("--kappa", kappa, "hopping grid");
  app.add_option("--beta", beta, "inverse-temperature grid");
  app.add_option("--mass", mass, "mass grid");
  app.add_option("--seed", seed, "base RNG seed")->each([&](const std::string&) {
    have_seed = true;
  });
  app.add_option("--out", out_path, "output path ('-' for stdout)");
  app.add_option("--format", format, "csv|jsonl");
  app.add_option("--tolerance", tolerance, "relative tolerance for the bound checks")
      ->each([&](const std::string&) { have_tolerance = true; });
  app.add_option("--threads", threads, "worker threads over parameter points");
  app.add_flag("--timing", timing, "record wall time per point (breaks byte-stable output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  njl::ScanConfig config;
  try {
    if (!config_path.empty()) config = njl::ScanConfig::from_json_file(config_path);
    if (!suite.empty()) config.suite = njl::suite_from_string(suite);
    if (!nu.empty() || !L.empty()) {
      if (nu.size() != L.size())
        throw std::invalid_argument("--nu and --L need the same number of values");
      config.lattices.clear();
      for (std::size_t i = 0; i < nu.size(); ++i) config.lattices.push_back({nu[i], L[i]});
    }
    if (!g.empty()) config.g = g;
    if (!kappa.empty()) config.kappa = kappa;
    if (!beta.empty()) config.beta = beta;
    if (!mass.empty()) config.mass = mass;
    if (have_seed) config.seed = seed;
    if (!out_path.empty()) config.out_path = out_path;
    if (!format.empty()) config.format = format;
    if (have_tolerance) config.tolerance = tolerance;
    if (threads > 0) config.threads = threads;
    if (timing) config.record_timing = true;
    if (config.format != "csv" && config.format != "jsonl")
      throw std::invalid_argument("format must be csv or jsonl");

    const njl::ScanResult result = njl::run_scan(config);
    njl::emit(result, config);

    int errors = 0;
    for (const auto& r : result.records)
      if (r.status != "ok") ++errors;
    if (errors > 0)
      std::cerr << errors << " point(s) reported errors (see records)\n";
    return result.all_ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
