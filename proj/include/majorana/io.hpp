#pragma once

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "majorana/canonical.hpp"
#include "majorana/dot.hpp"
#include "majorana/observables.hpp"
#include "majorana/phase_scan.hpp"

namespace majorana::io {

using json = nlohmann::ordered_json;

// 17 significant digits round-trip an IEEE double exactly; identical inputs
// therefore produce byte-identical files. Non-finite spellings are pinned so
// printf variants cannot differ.
inline std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

// Every output starts with format, timestamp, and the effective run
// configuration. The timestamp line is the only non-reproducible content;
// stripping lines that contain "timestamp" makes reruns byte-comparable.
// The config holds result-affecting parameters only (no thread counts, no
// file paths), so it can be fed back to reproduce the payload exactly.
inline void write_prelude(std::ostream& os, const std::string& format_name, const json& config) {
  os << "# format: " << format_name << " v1\n";
  os << "# timestamp: " << utc_timestamp() << "\n";
  os << "# config: " << (config.is_null() ? json::object() : config).dump() << "\n";
}

inline void write_spectrum_csv(std::ostream& os, const CanonicalForm& canon,
                               const json& config = {}) {
  write_prelude(os, "majorana-spectrum", config);
  os << "# det_w: " << canon.det_w << "\n";
  os << "# residual: " << fmt17(canon.residual) << "\n";
  os << "index,value\n";
  for (std::size_t m = 0; m < canon.epsilons.size(); ++m)
    os << m + 1 << "," << fmt17(canon.epsilons[m]) << "\n";
}

inline void write_zero_modes_csv(std::ostream& os, const ZeroModePair& pair,
                                 const json& config = {}) {
  write_prelude(os, "majorana-zero-modes", config);
  os << "# eps1: " << fmt17(pair.eps1) << "\n";
  os << "# localization: " << fmt17(pair.localization) << "\n";
  os << "majorana_index,mode1,mode2\n";
  for (int i = 0; i < pair.gamma1_components.size(); ++i)
    os << i + 1 << "," << fmt17(pair.gamma1_components(i)) << ","
       << fmt17(pair.gamma2_components(i)) << "\n";
}

inline void write_phase_scan_csv(std::ostream& os, const std::vector<PhasePoint>& points,
                                 bool noisy, const json& config = {}) {
  write_prelude(os, noisy ? "majorana-noise-scan" : "majorana-phase-scan", config);
  os << "delta,mu,eps1,eps2,has_zero_mode";
  if (noisy) os << ",survival_fraction,n_seeds";
  os << "\n";
  for (const PhasePoint& p : points) {
    os << fmt17(p.delta) << "," << fmt17(p.mu) << "," << fmt17(p.eps1) << "," << fmt17(p.eps2)
       << "," << (p.has_zero_mode ? 1 : 0);
    if (noisy) os << "," << fmt17(p.survival_fraction) << "," << p.n_seeds;
    os << "\n";
  }
}

inline void write_dot_sweep_csv(std::ostream& os, const SweepResult& sweep, bool with_exact,
                                const json& config = {}) {
  write_prelude(os, "majorana-dot-sweep", config);
  os << "# s: " << fmt17(sweep.s.real()) << (sweep.s.imag() < 0.0 ? "-" : "+")
     << fmt17(std::abs(sweep.s.imag())) << "i\n";
  os << "# gap: " << fmt17(sweep.gap) << "\n";
  os << "# localization: " << fmt17(sweep.localization) << "\n";
  os << "# excluded_count: " << sweep.excluded_v.size() << "\n";
  os << "v,s_re,s_im,e_plus,c1_abs2,c2_abs2";
  if (with_exact) os << ",exact_eps1,exact_eps2";
  os << "\n";
  for (const SweepPoint& p : sweep.points) {
    os << fmt17(p.v) << "," << fmt17(p.s.real()) << "," << fmt17(p.s.imag()) << ","
       << fmt17(p.e_plus) << "," << fmt17(p.c1_abs2) << "," << fmt17(p.c2_abs2);
    if (with_exact) os << "," << fmt17(p.exact_eps1) << "," << fmt17(p.exact_eps2);
    os << "\n";
  }
}

// JSON report; the timestamp key sits on its own line under the default
// 2-space dump, so the same strip rule applies. A NaN gap serializes as null.
inline void write_density_json(std::ostream& os, const GroundStateReport& report,
                               const json& config = {}) {
  json root;
  root["format"] = "majorana-density v1";
  root["timestamp"] = utc_timestamp();
  root["config"] = config.is_null() ? json::object() : config;
  root["energy"] = report.energy;
  root["gap"] = report.gap;
  root["parity"] = report.parity;
  std::vector<double> densities(report.densities.data(),
                                report.densities.data() + report.densities.size());
  root["densities"] = densities;
  os << root.dump(2) << "\n";
}

}  // namespace majorana::io
