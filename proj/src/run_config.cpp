#include "logsplit/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "logsplit/version.hpp"

namespace logsplit {

using nlohmann::json;

std::string to_string(ReferenceKind ref) {
  return ref == ReferenceKind::AnalyticGausson ? "analytic" : "fine_strang";
}

ReferenceKind reference_from_string(const std::string& name) {
  if (name == "analytic") return ReferenceKind::AnalyticGausson;
  if (name == "fine_strang") return ReferenceKind::FineStrang;
  throw std::invalid_argument("reference: must be \"analytic\" or \"fine_strang\"");
}

DomainSpec RunConfig::domain() const {
  try {
    if (dim == 1) return DomainSpec::line(lower[0], upper[0], points[0]);
    return DomainSpec::box(lower, upper, points);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("domain: ") + e.what());
  }
}

Regularization RunConfig::regularization() const {
  switch (reg_kind) {
    case RegKind::ExactLog: return Regularization::exact_log();
    case RegKind::LocalEnergy: return Regularization::local_energy(reg_n, reg_eps);
    case RegKind::SqrtShift: return Regularization::sqrt_shift(reg_eps);
    case RegKind::SquareShift: return Regularization::square_shift(reg_eps);
  }
  throw std::logic_error("unreachable");
}

std::int64_t RunConfig::steps() const {
  if (!(tau > 0.0)) throw std::invalid_argument("tau: must be > 0");
  if (!(total_time >= 0.0)) throw std::invalid_argument("T: must be >= 0");
  const double ratio = total_time / tau;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-12 * std::max(1.0, ratio))
    throw std::invalid_argument("T/tau not integral (T = " + std::to_string(total_time) +
                                ", tau = " + std::to_string(tau) + ")");
  return static_cast<std::int64_t>(rounded);
}

namespace {

GaussonSpec default_gausson(int dim, double lambda) {
  GaussonSpec g;
  g.dim = dim;
  g.lambda = lambda;
  g.amplitude = std::pow(-lambda * M_PI, -0.25);
  for (int a = 0; a < dim; ++a) g.velocity[a] = 1.0;
  return g;
}

} // namespace

Field RunConfig::initial_field() const {
  const auto specs = initial.empty() ? std::vector<GaussonSpec>{default_gausson(dim, lambda)} : initial;
  if (specs.size() == 1) return gausson_field(specs[0], domain(), 0.0);
  return superpose(specs, domain(), 0.0);
}

Field RunConfig::oracle_field(double t) const {
  if (!has_analytic_oracle())
    throw std::invalid_argument("analytic oracle requires single-Gausson initial data");
  const auto spec = initial.empty() ? default_gausson(dim, lambda) : initial[0];
  return gausson_field(spec, domain(), t);
}

void RunConfig::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dim: must be 1 or 2");
  (void)domain();
  (void)regularization();
  if (lambda == 0.0) throw std::invalid_argument("lambda: must be nonzero");
  (void)steps();
  if (fit_norm != "l2" && fit_norm != "h1" && fit_norm != "linf" && fit_norm != "density_l1")
    throw std::invalid_argument("fit_norm: must be one of l2, h1, linf, density_l1");
  if (workers < 0) throw std::invalid_argument("workers: must be >= 0");
  if (tau_ref < 0.0) throw std::invalid_argument("tau_ref: must be >= 0");
  for (const auto& g : initial) {
    if (g.dim != dim) throw std::invalid_argument("initial: Gausson dim must match config dim");
    g.validate();
  }
}

namespace {

void check_known_keys(const json& j, const std::vector<std::string>& known, const std::string& where) {
  std::vector<std::string> unknown;
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) unknown.push_back(item.key());
  if (!unknown.empty()) {
    std::sort(unknown.begin(), unknown.end());
    std::string msg = "unknown config key(s)";
    if (!where.empty()) msg += " in " + where;
    msg += ":";
    for (const auto& k : unknown) msg += " \"" + k + "\"";
    throw std::invalid_argument(msg);
  }
}

double need_number(const json& j, const std::string& key) {
  if (!j.at(key).is_number()) throw std::invalid_argument(key + ": must be a number");
  return j.at(key).get<double>();
}

// Accepts an array of length dim (or a bare number in 1D).
template <typename T>
std::array<T, 2> read_axis_array(const json& j, const std::string& key, int dim, std::array<T, 2> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  std::array<T, 2> out = fallback;
  if (v.is_number() && dim == 1) {
    out[0] = v.get<T>();
    return out;
  }
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    throw std::invalid_argument(key + ": must be an array of length dim");
  for (int a = 0; a < dim; ++a) out[a] = v[a].get<T>();
  return out;
}

} // namespace

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  check_known_keys(j,
                   {"dim", "lower", "upper", "points", "lambda", "reg", "scheme", "tau", "T",
                    "initial", "record_every", "reference", "tau_ref", "fit_norm", "workers",
                    "out_dir"},
                   "");

  RunConfig cfg;
  if (j.contains("dim")) cfg.dim = j.at("dim").get<int>();
  if (cfg.dim != 1 && cfg.dim != 2) throw std::invalid_argument("dim: must be 1 or 2");

  cfg.lower = read_axis_array<double>(j, "lower", cfg.dim, cfg.lower);
  cfg.upper = read_axis_array<double>(j, "upper", cfg.dim, cfg.upper);
  // Default spacing: h = 1/64 in 1D, h = 1/16 in 2D (on [-16,16]).
  std::array<std::size_t, 2> default_points{2048, 512};
  if (cfg.dim == 2) default_points = {512, 512};
  cfg.points = read_axis_array<std::size_t>(j, "points", cfg.dim, default_points);

  if (j.contains("lambda")) cfg.lambda = need_number(j, "lambda");

  if (j.contains("reg")) {
    const auto& r = j.at("reg");
    if (!r.is_object()) throw std::invalid_argument("reg: must be an object");
    check_known_keys(r, {"kind", "n", "eps"}, "\"reg\"");
    if (r.contains("kind")) cfg.reg_kind = reg_kind_from_string(r.at("kind").get<std::string>());
    if (r.contains("n")) cfg.reg_n = r.at("n").get<int>();
    if (r.contains("eps")) cfg.reg_eps = need_number(r, "eps");
  }

  if (j.contains("scheme")) cfg.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  if (j.contains("tau")) cfg.tau = need_number(j, "tau");
  if (j.contains("T")) cfg.total_time = need_number(j, "T");

  if (j.contains("initial")) {
    const auto& init = j.at("initial");
    if (!init.is_array()) throw std::invalid_argument("initial: must be an array of Gausson objects");
    for (const auto& g : init) {
      check_known_keys(g, {"b", "v", "x0"}, "\"initial\"");
      GaussonSpec spec;
      spec.dim = cfg.dim;
      spec.lambda = cfg.lambda;
      spec.amplitude = g.contains("b") ? g.at("b").get<double>()
                                       : std::pow(-cfg.lambda * M_PI, -0.25);
      spec.velocity = read_axis_array<double>(g, "v", cfg.dim, {0.0, 0.0});
      spec.center = read_axis_array<double>(g, "x0", cfg.dim, {0.0, 0.0});
      cfg.initial.push_back(spec);
    }
  }

  if (j.contains("record_every")) cfg.record_every = j.at("record_every").get<std::int64_t>();
  if (j.contains("reference")) cfg.reference = reference_from_string(j.at("reference").get<std::string>());
  if (j.contains("tau_ref")) cfg.tau_ref = need_number(j, "tau_ref");
  if (j.contains("fit_norm")) cfg.fit_norm = j.at("fit_norm").get<std::string>();
  if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();

  cfg.validate();
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
  }
  return config_from_json(j);
}

namespace {

json axis_json(const double* data, int dim) {
  json a = json::array();
  for (int i = 0; i < dim; ++i) a.push_back(data[i]);
  return a;
}

} // namespace

json config_to_json(const RunConfig& cfg) {
  json j;
  j["dim"] = cfg.dim;
  j["lower"] = axis_json(cfg.lower.data(), cfg.dim);
  j["upper"] = axis_json(cfg.upper.data(), cfg.dim);
  {
    json p = json::array();
    for (int a = 0; a < cfg.dim; ++a) p.push_back(cfg.points[a]);
    j["points"] = p;
  }
  j["lambda"] = cfg.lambda;
  j["reg"] = {{"kind", to_string(cfg.reg_kind)}, {"n", cfg.reg_n}, {"eps", cfg.reg_eps}};
  j["scheme"] = to_string(cfg.scheme);
  j["tau"] = cfg.tau;
  j["T"] = cfg.total_time;
  json init = json::array();
  for (const auto& g : cfg.initial) {
    init.push_back({{"b", g.amplitude},
                    {"v", axis_json(g.velocity.data(), cfg.dim)},
                    {"x0", axis_json(g.center.data(), cfg.dim)}});
  }
  j["initial"] = init;
  j["record_every"] = cfg.record_every;
  j["reference"] = to_string(cfg.reference);
  j["tau_ref"] = cfg.tau_ref;
  j["fit_norm"] = cfg.fit_norm;
  j["workers"] = cfg.workers;
  j["out_dir"] = cfg.out_dir;
  return j;
}

json meta_json(const RunConfig& cfg) {
  json j;
  j["config"] = config_to_json(cfg);
  j["conventions"] = {
      {"dft", "unnormalized forward, 1/prod(N) inverse"},
      {"l2", "sqrt(prod(h) * sum |u|^2)"},
      {"h1", "sqrt(l2^2 + sum_axes l2(spectral derivative)^2)"},
      {"density_l1", "prod(h) * sum | |a|^2 - |b|^2 |"},
      {"table_norm", "l2"},
      {"table_reference", "analytic Gausson of the exact equation"},
  };
  j["version"] = version();
  return j;
}

void write_meta(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / "meta.json");
  if (!out) throw std::runtime_error("cannot write meta.json in " + out_dir.string());
  out << meta_json(cfg).dump(2) << "\n";
}

int resolve_workers(int requested) {
  if (const char* env = std::getenv("LOGSPLIT_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace logsplit
