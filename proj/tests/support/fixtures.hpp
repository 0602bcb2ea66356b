#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fidelity/fidelity.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return FIDELITY_DATA_DIR; }
inline std::filesystem::path pima_path() { return data_dir() / "pima_diabetes.csv"; }

inline fidelity::DataTable pima() { return fidelity::load_csv(pima_path()); }

inline fidelity::RunConfig in_memory_config() {
  fidelity::RunConfig cfg;
  cfg.real_path = "real.csv";
  cfg.synthetic_path = "synthetic.csv";
  cfg.report_path = "report.json";
  cfg.plots_dir = "plots";
  return cfg;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fidelity_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << s;
}

inline std::vector<double> col(const fidelity::DataTable& t, const std::string& name) {
  return t.numeric_values(*t.index_of(name));
}

}  // namespace fixtures
