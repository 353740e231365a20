#include "gslab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gslab/errors.hpp"

namespace gslab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::comma() {
  if (need_comma_) out_ += ',';
  need_comma_ = false;
}
void JsonWriter::begin_object() {
  comma();
  out_ += '{';
}
void JsonWriter::begin_object(const std::string& key) {
  comma();
  out_ += '"' + key + "\":{";
}
void JsonWriter::end_object() {
  out_ += '}';
  need_comma_ = true;
}
void JsonWriter::begin_array(const std::string& key) {
  comma();
  out_ += '"' + key + "\":[";
}
void JsonWriter::end_array() {
  out_ += ']';
  need_comma_ = true;
}
void JsonWriter::field(const std::string& key, double v) {
  comma();
  out_ += '"' + key + "\":" + format_double(v);
  need_comma_ = true;
}
void JsonWriter::field(const std::string& key, int v) {
  comma();
  out_ += '"' + key + "\":" + std::to_string(v);
  need_comma_ = true;
}
void JsonWriter::field(const std::string& key, bool v) {
  comma();
  out_ += '"' + key + "\":" + (v ? "true" : "false");
  need_comma_ = true;
}
void JsonWriter::field(const std::string& key, const std::string& v) {
  comma();
  out_ += '"' + key + "\":" + nlohmann::json(v).dump();
  need_comma_ = true;
}
void JsonWriter::element(double v) {
  comma();
  out_ += format_double(v);
  need_comma_ = true;
}

std::string to_json(const FunctionalReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.field("action", rep.action);
  w.field("nehari", rep.nehari);
  w.field("pohozaev", rep.pohozaev);
  w.field("i_func", rep.i_func);
  w.field("grad_sq", rep.grad_sq);
  w.field("mass", rep.mass);
  w.field("lp1", rep.lp1);
  w.field("l2s", rep.l2s);
  w.end_object();
  return w.take();
}

std::string to_json(const ShootingResult& res, const ProblemParams& prm) {
  JsonWriter w;
  w.begin_object();
  w.field("d", prm.d);
  w.field("p", prm.p);
  w.field("omega", prm.omega);
  w.field("m_star", res.m_star);
  w.field("m_low", res.m_low);
  w.field("m_high", res.m_high);
  w.field("ode_residual", res.ode_residual);
  w.field("nodes", res.profile.size());
  w.field("r0", res.profile.grid.r0());
  w.field("rmax", res.profile.grid.rmax());
  w.field("tail_amplitude", res.profile.tail.amplitude);
  w.field("tail_rate", res.profile.tail.rate);
  w.field("tail_power", res.profile.tail.power);
  w.field("trace_length", static_cast<int>(res.trace.size()));
  w.begin_object("functionals");
  w.field("action", res.report.action);
  w.field("nehari", res.report.nehari);
  w.field("pohozaev", res.report.pohozaev);
  w.field("i_func", res.report.i_func);
  w.field("grad_sq", res.report.grad_sq);
  w.field("mass", res.report.mass);
  w.field("lp1", res.report.lp1);
  w.field("l2s", res.report.l2s);
  w.end_object();
  w.end_object();
  return w.take();
}

std::string to_json(const SpectrumReport& rep) {
  JsonWriter w;
  w.begin_object();
  w.field("gap", rep.gap);
  w.field("truncation_radius", rep.truncation_radius);
  w.field("refinement_delta", rep.refinement_delta);
  w.begin_array("eigenvalues");
  for (const auto& p : rep.pairs) w.element(p.value);
  w.end_array();
  w.begin_array("residuals");
  for (const auto& p : rep.pairs) w.element(p.residual);
  w.end_array();
  w.end_object();
  return w.take();
}

std::string to_json(const PucciSerrinReport& rep, int d, double p, double omega) {
  JsonWriter w;
  w.begin_object();
  w.field("d", d);
  w.field("p", p);
  w.field("omega", omega);
  w.field("verdict", std::string(to_string(rep.verdict)));
  w.field("a2", rep.coeffs.a2);
  w.field("ap1", rep.coeffs.ap1);
  w.field("aq1", rep.coeffs.aq1);
  w.field("a2p", rep.coeffs.a2p);
  w.field("apq", rep.coeffs.apq);
  w.field("exact", rep.coeffs.exact);
  if (rep.coeffs.exact) {
    w.field("a2_exact", rep.coeffs.r_a2.str());
    w.field("ap1_exact", rep.coeffs.r_ap1.str());
    w.field("aq1_exact", rep.coeffs.r_aq1.str());
    w.field("a2p_exact", rep.coeffs.r_a2p.str());
    w.field("apq_exact", rep.coeffs.r_apq.str());
  }
  w.field("g_min", rep.g_min);
  w.field("g_min_at", rep.g_min_at);
  w.field("certificate", rep.certificate);
  if (rep.witness_u) {
    w.field("witness_u", *rep.witness_u);
    w.field("witness_g", *rep.witness_g);
  }
  if (!rep.hint.empty()) w.field("hint", rep.hint);
  w.end_object();
  return w.take();
}

std::string to_json(const BubbleExpansionReport& rep, int d, double p, double omega) {
  JsonWriter w;
  w.begin_object();
  w.field("d", d);
  w.field("p", p);
  w.field("omega", omega);
  w.field("sigma_pow", rep.sigma_pow);
  auto arr = [&](const char* key, const std::vector<double>& v) {
    w.begin_array(key);
    for (double x : v) w.element(x);
    w.end_array();
  };
  arr("eps", rep.eps);
  arr("grad_sq", rep.grad_sq);
  arr("l2s", rep.l2s);
  arr("l2", rep.l2);
  arr("lp1", rep.lp1);
  arr("y_max", rep.y_max);
  arr("m_upper", rep.m_upper);
  w.field("grad_rate", rep.grad_rate);
  w.field("crit_rate", rep.crit_rate);
  w.field("lp1_rate", rep.lp1_rate);
  w.field("l2_rate", rep.l2_rate);
  w.field("y_log_coeff", rep.y_log_coeff);
  w.field("y_log_quality", rep.y_log_quality);
  w.field("fit_ok", rep.fit_ok);
  w.end_object();
  return w.take();
}

std::string error_json(const std::string& kind, const std::string& message) {
  JsonWriter w;
  w.begin_object();
  w.field("error", kind);
  w.field("message", message);
  w.end_object();
  return w.take();
}

std::string profile_csv(const RadialProfile& u) {
  std::string s = "r,u,u_prime\n";
  for (int i = 0; i < u.size(); ++i) {
    s += format_double(u.grid.nodes(i));
    s += ',';
    s += format_double(u.values(i));
    s += ',';
    s += format_double(u.derivs(i));
    s += '\n';
  }
  return s;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string s =
      "omega,m_star,alpha,beta,beta_over_alpha,h1dot_dist,l2_dist,decay_sup,exp_tail_ok,errors\n";
  for (const auto& r : rows) {
    s += format_double(r.omega);
    s += ',';
    s += format_double(r.m_star);
    s += ',';
    s += format_double(r.alpha);
    s += ',';
    s += format_double(r.beta);
    s += ',';
    s += format_double(r.beta_over_alpha);
    s += ',';
    s += format_double(r.h1dot_dist);
    s += ',';
    s += format_double(r.l2_dist);
    s += ',';
    s += format_double(r.decay_sup);
    s += ',';
    s += r.exp_tail_ok ? "1" : "0";
    s += ',';
    s += nlohmann::json(r.error).dump();  // quoted, comma-safe
    s += '\n';
  }
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string ProfileCache::key(const ProblemParams& prm, const ShootOptions& opts) const {
  std::ostringstream os;
  os << "v" << kSchemaVersion << "|d=" << prm.d << "|p=" << format_double(prm.p)
     << "|omega=" << format_double(prm.omega) << "|btol=" << format_double(opts.bisect_tol)
     << "|rtol=" << format_double(opts.ode.rtol) << "|atol=" << format_double(opts.ode.atol);
  return os.str();
}

std::string ProfileCache::path_for(const std::string& k) const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(k));
  return dir_ + "/solve_" + buf + ".json";
}

std::optional<ShootingResult> ProfileCache::load(const ProblemParams& prm,
                                                 const ShootOptions& opts) const {
  if (dir_.empty()) return std::nullopt;
  const std::string k = key(prm, opts);
  std::ifstream f(path_for(k));
  if (!f) return std::nullopt;
  nlohmann::json j;
  try {
    f >> j;
  } catch (...) {
    return std::nullopt;
  }
  if (j.value("key", "") != k) return std::nullopt;  // hash collision or stale schema

  ShootingResult res;
  res.m_star = j["m_star"];
  res.m_low = j["m_low"];
  res.m_high = j["m_high"];
  res.ode_residual = j["ode_residual"];
  const auto& nodes = j["nodes"];
  const auto& vals = j["values"];
  const auto& ders = j["derivs"];
  const int n = static_cast<int>(nodes.size());
  Eigen::ArrayXd nd(n);
  for (int i = 0; i < n; ++i) nd(i) = nodes[i];
  res.profile.grid = make_grid_from_nodes(prm.d, nd);
  res.profile.values.resize(n);
  res.profile.derivs.resize(n);
  for (int i = 0; i < n; ++i) {
    res.profile.values(i) = vals[i];
    res.profile.derivs(i) = ders[i];
  }
  res.profile.tail =
      TailModel{j["tail_amplitude"], j["tail_rate"], j["tail_power"]};
  res.profile.has_tail = true;
  res.profile.core = CoreModel{j["core_c0"], j["core_c2"], j["core_c4"]};
  res.profile.has_core = true;
  res.report = functionals(res.profile, prm);
  return res;
}

void ProfileCache::store(const ProblemParams& prm, const ShootOptions& opts,
                         const ShootingResult& res) const {
  if (dir_.empty()) return;
  const std::string k = key(prm, opts);
  JsonWriter w;
  w.begin_object();
  w.field("key", k);
  w.field("m_star", res.m_star);
  w.field("m_low", res.m_low);
  w.field("m_high", res.m_high);
  w.field("ode_residual", res.ode_residual);
  w.field("tail_amplitude", res.profile.tail.amplitude);
  w.field("tail_rate", res.profile.tail.rate);
  w.field("tail_power", res.profile.tail.power);
  w.field("core_c0", res.profile.core.c0);
  w.field("core_c2", res.profile.core.c2);
  w.field("core_c4", res.profile.core.c4);
  auto arr = [&](const char* key2, const Eigen::ArrayXd& v) {
    w.begin_array(key2);
    for (int i = 0; i < v.size(); ++i) w.element(v(i));
    w.end_array();
  };
  arr("nodes", res.profile.grid.nodes);
  arr("values", res.profile.values);
  arr("derivs", res.profile.derivs);
  w.end_object();
  write_file(path_for(k), w.take());
}

}  // namespace gslab
