#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gslab/asymptotics.hpp"
#include "gslab/ode.hpp"
#include "gslab/params.hpp"
#include "gslab/pucci_serrin.hpp"
#include "gslab/spectral.hpp"

namespace gslab {

// Minimal ordered JSON emitter; every number is written with 17 significant
// digits so files round-trip doubles exactly and runs are byte-reproducible.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }
  void begin_object();
  void begin_object(const std::string& key);
  void end_object();
  void begin_array(const std::string& key);
  void end_array();
  void field(const std::string& key, double v);
  void field(const std::string& key, int v);
  void field(const std::string& key, bool v);
  void field(const std::string& key, const std::string& v);
  void element(double v);

 private:
  void comma();
  std::string out_;
  bool need_comma_ = false;
};

std::string format_double(double v);  // %.17g

std::string to_json(const FunctionalReport& rep);
std::string to_json(const ShootingResult& res, const ProblemParams& prm);
std::string to_json(const SpectrumReport& rep);
std::string to_json(const PucciSerrinReport& rep, int d, double p, double omega);
std::string to_json(const BubbleExpansionReport& rep, int d, double p, double omega);
std::string error_json(const std::string& kind, const std::string& message);

std::string profile_csv(const RadialProfile& u);                 // r,u,u_prime
std::string sweep_csv(const std::vector<SweepRow>& rows);        // declared column order

void write_file(const std::string& path, const std::string& content);

// Disk cache of shooting results keyed by (d, p, ω, tolerance bundle, schema).
class ProfileCache {
 public:
  explicit ProfileCache(std::string dir) : dir_(std::move(dir)) {}

  std::string key(const ProblemParams& prm, const ShootOptions& opts) const;
  std::optional<ShootingResult> load(const ProblemParams& prm, const ShootOptions& opts) const;
  void store(const ProblemParams& prm, const ShootOptions& opts, const ShootingResult& res) const;

  static constexpr int kSchemaVersion = 1;

 private:
  std::string path_for(const std::string& key) const;
  std::string dir_;
};

}  // namespace gslab
