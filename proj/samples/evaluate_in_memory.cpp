// Evaluates two small in-memory tables and prints a few metrics, without
// touching the filesystem.

#include <iostream>

#include "fidelity/fidelity.hpp"

int main() {
  const auto real = fidelity::parse_csv(
      "age,income,segment\n"
      "23,31000,a\n34,42000,b\n45,51000,a\n52,60500,c\n29,38000,b\n61,71000,a\n38,45500,c\n41,49000,b\n");
  const auto synth = fidelity::parse_csv(
      "age,income,segment\n"
      "25,30500,a\n33,43000,b\n47,50000,a\n50,62000,c\n30,36000,a\n58,69000,b\n36,47000,c\n44,50500,b\n");

  fidelity::RunConfig cfg;
  cfg.knn_k = 2;
  cfg.categorical_unique_max = 3;
  const auto ev = fidelity::evaluate_tables(real, synth, cfg, "sdb_000000000000", fidelity::now_timestamp());

  for (const auto& f : ev.report.locals) {
    std::cout << f.name << " (" << fidelity::to_string(f.kind) << "): JSD=" << f.metrics.jsd.value_or(0.0);
    if (f.metrics.ks) std::cout << " KS=" << *f.metrics.ks;
    std::cout << "\n";
  }
  if (const auto& s = ev.report.globals.structural) {
    std::cout << "CKA=" << s->cka << " GSFS=" << s->gsfs << "\n";
  }
  return 0;
}
