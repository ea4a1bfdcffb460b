#include "logsplit/integrators.hpp"

#include <cmath>
#include <stdexcept>

namespace logsplit {

std::string to_string(SplitScheme scheme) {
  switch (scheme) {
    case SplitScheme::LieAB: return "lie_ab";
    case SplitScheme::LieBA: return "lie_ba";
    case SplitScheme::StrangBAB: return "strang_bab";
    case SplitScheme::StrangABA: return "strang_aba";
  }
  throw std::logic_error("unreachable");
}

SplitScheme scheme_from_string(const std::string& name) {
  if (name == "lie_ab") return SplitScheme::LieAB;
  if (name == "lie_ba") return SplitScheme::LieBA;
  if (name == "strang_bab") return SplitScheme::StrangBAB;
  if (name == "strang_aba") return SplitScheme::StrangABA;
  throw std::invalid_argument("unknown split scheme: " + name);
}

void EvolveConfig::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("EvolveConfig: tau must be > 0");
  if (!(tau <= tau_max)) throw std::invalid_argument("EvolveConfig: tau exceeds tau_max");
  if (steps < 0) throw std::invalid_argument("EvolveConfig: steps must be >= 0");
}

BlowupError::BlowupError(std::int64_t step_index, double max_modulus)
    : std::runtime_error("integration blew up at step " + std::to_string(step_index) +
                         " (max |u| = " + std::to_string(max_modulus) + ")"),
      step(step_index) {}

namespace {

// In-place sub-flows sharing one Spectral and scratch buffer per evolution.
class Propagator {
public:
  Propagator(const DomainSpec& domain, double lambda, const Regularization& reg)
      : domain_(domain),
        spectral_(shared_spectral(domain)),
        k2_(wavenumber_squares(domain)),
        scratch_(domain.size()),
        lambda_(lambda),
        reg_(reg) {}

  void apply_a(std::vector<Complex>& u, double t) {
    if (t == 0.0) return;
    spectral_.forward(u, scratch_);
    for (std::size_t m = 0; m < scratch_.size(); ++m)
      scratch_[m] *= std::polar(1.0, -t * k2_[m]);
    spectral_.inverse(scratch_, u);
  }

  void apply_b(std::vector<Complex>& u, double t) {
    if (t == 0.0) return;
    const bool exact = reg_.kind() == RegKind::ExactLog;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double rho = std::norm(u[i]);
      if (exact && rho == 0.0)
        throw std::domain_error("flow_b: exact_log hit a zero sample at grid index " +
                                std::to_string(i));
      u[i] *= std::polar(1.0, -t * lambda_ * reg_.f_value(rho));
    }
  }

  void apply_step(std::vector<Complex>& u, SplitScheme scheme, double tau) {
    switch (scheme) {
      case SplitScheme::LieAB:
        apply_b(u, tau);
        apply_a(u, tau);
        break;
      case SplitScheme::LieBA:
        apply_a(u, tau);
        apply_b(u, tau);
        break;
      case SplitScheme::StrangBAB:
        apply_b(u, 0.5 * tau);
        apply_a(u, tau);
        apply_b(u, 0.5 * tau);
        break;
      case SplitScheme::StrangABA:
        apply_a(u, 0.5 * tau);
        apply_b(u, tau);
        apply_a(u, 0.5 * tau);
        break;
    }
  }

private:
  DomainSpec domain_;
  Spectral& spectral_;
  std::vector<double> k2_;
  std::vector<Complex> scratch_;
  double lambda_;
  Regularization reg_;
};

double max_modulus(const std::vector<Complex>& u) {
  double m = 0.0;
  for (const auto& v : u) m = std::max(m, std::abs(v));
  return m;
}

} // namespace

Field flow_a(const Field& f, double t) {
  Field out = f;
  Propagator prop(f.domain, 0.0, Regularization::exact_log());
  prop.apply_a(out.values, t);
  return out;
}

Field flow_b(const Field& f, double t, double lambda, const Regularization& reg) {
  Field out = f;
  Propagator prop(f.domain, lambda, reg);
  prop.apply_b(out.values, t);
  return out;
}

Field step(const Field& f, const EvolveConfig& cfg) { return step(f, cfg, cfg.tau); }

Field step(const Field& f, const EvolveConfig& cfg, double tau) {
  Field out = f;
  Propagator prop(f.domain, cfg.lambda, cfg.reg);
  prop.apply_step(out.values, cfg.scheme, tau);
  return out;
}

EvolveResult evolve(const Field& f0, const EvolveConfig& cfg, const EvolveObservers& observers) {
  cfg.validate();
  Propagator prop(f0.domain, cfg.lambda, cfg.reg);
  const Regularization exact = Regularization::exact_log();

  EvolveResult result;
  result.final_state = f0;
  auto& u = result.final_state.values;
  auto& series = result.series;
  series.has_errors = static_cast<bool>(observers.oracle);

  const auto record = [&](double t, const Field& state) {
    series.times.push_back(t);
    series.mass.push_back(mass(state));
    if (observers.record_energy) {
      series.energy_reg.push_back(energy(state, cfg.lambda, cfg.reg));
      series.energy_exact.push_back(energy(state, cfg.lambda, exact));
    }
    if (observers.oracle) {
      const ErrorNorms e = error_norms(state, observers.oracle(t));
      series.err_l2.push_back(e.l2);
      series.err_h1.push_back(e.h1);
      series.err_linf.push_back(e.linf);
      series.err_density_l1.push_back(e.density_l1);
    }
  };

  record(0.0, result.final_state);
  for (std::int64_t k = 1; k <= cfg.steps; ++k) {
    prop.apply_step(u, cfg.scheme, cfg.tau);
    const double mm = max_modulus(u);
    if (!std::isfinite(mm) || mm > cfg.max_modulus_guard) throw BlowupError(k, mm);
    // t_k as a product, not a running sum.
    const double t = static_cast<double>(k) * cfg.tau;
    const bool due = cfg.record_every > 0 && k % cfg.record_every == 0;
    if (due || k == cfg.steps) record(t, result.final_state);
  }
  return result;
}

} // namespace logsplit
