#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "njl/verify.hpp"

namespace njl {

enum class Suite { identities, bounds, continuum, all };

Suite suite_from_string(const std::string& name);
std::string to_string(Suite suite);

struct ScanConfig {
  struct LatticePoint {
    int nu = 2;
    int L = 1;
  };
  std::vector<LatticePoint> lattices{{2, 1}};
  std::vector<double> g{1.0};
  std::vector<double> kappa{0.0};
  std::vector<double> beta{1.0};
  std::vector<double> mass{0.0};
  Suite suite = Suite::all;
  std::uint64_t seed = 20240801;
  double tolerance = 1e-8;
  std::string out_path;         // empty: stdout
  std::string format = "jsonl"; // or "csv"
  bool record_timing = false;   // timing breaks byte-reproducible output
  int gaussian_draws = 10;
  int rp_samples = 50;
  int threads = 1;
  int identity_site_cap = 8;    // identity battery needs dense unitaries

  static ScanConfig from_json_file(const std::string& path);
  static ScanConfig from_json(const std::string& text);
};

struct ScanRecord {
  int nu = 0;
  int L = 0;
  double g = 0.0;
  double kappa = 0.0;
  double beta = 0.0;
  double mass = 0.0;
  std::uint64_t seed = 0;  // per-point seed
  std::string status = "ok";
  std::string error;

  double log_z = 0.0;
  double energy = 0.0;         // <H>
  double ground_energy = 0.0;
  double m_lro = 0.0;          // 0 when mass != 0
  double order_per_site = 0.0; // ground <O>/|Lambda| at m > 0
  std::vector<double> c_table;

  std::vector<verify::Check> checks;
  std::vector<BoundReport> bounds;
  bool all_ok = true;
  double wall_ms = 0.0;
};

struct ScanResult {
  std::vector<ScanRecord> records;
  bool all_ok = true;  // conjunction of the theorem-backed checks
};

ScanResult run_scan(const ScanConfig& config);

void emit_csv(const std::vector<ScanRecord>& records, const ScanConfig& config,
              std::ostream& out);
void emit_jsonl(const std::vector<ScanRecord>& records, const ScanConfig& config,
                std::ostream& out);
// Writes to config.out_path (or stdout when empty) in config.format.
void emit(const ScanResult& result, const ScanConfig& config);

}  // namespace njl
