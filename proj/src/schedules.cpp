#include "sgdrates/schedules.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sgdrates {

namespace {

void require_t(std::int64_t t) {
  if (t < 1) {
    throw std::invalid_argument("schedule index t must be >= 1");
  }
}

void require_T(std::int64_t T) {
  if (T < 1) {
    throw std::invalid_argument("horizon T must be >= 1");
  }
}

void require_params(const ScheduleConfig& cfg) {
  if (cfg.kind == ScheduleKind::Exponential && !(cfg.decay > 0.0 && cfg.decay <= 1.0)) {
    throw std::invalid_argument("exponential averaging factor must lie in (0, 1]");
  }
  if (cfg.kind == ScheduleKind::GeneralizedR && !(cfg.r >= 0.0)) {
    throw std::invalid_argument("generalized weight exponent r must be >= 0");
  }
}

double power_sum(double r, std::int64_t n) {
  double s = 0.0;
  for (std::int64_t tau = 1; tau <= n; ++tau) {
    s += std::pow(static_cast<double>(tau), r);
  }
  return s;
}

}  // namespace

double averaging_factor(const ScheduleConfig& cfg, std::int64_t t) {
  require_t(t);
  require_params(cfg);
  const double td = static_cast<double>(t);
  switch (cfg.kind) {
    case ScheduleKind::Thm1:
    case ScheduleKind::Thm2:
      return 2.0 / (td + 1.0);
    case ScheduleKind::PropOriginal:
      return 1.0 / td;
    case ScheduleKind::PropInterior:
      return 1.0;  // the running average tracks the last iterate
    case ScheduleKind::GeneralizedR:
      return std::pow(td, cfg.r) / power_sum(cfg.r, t);
    case ScheduleKind::Exponential:
      return t == 1 ? 1.0 : cfg.decay;
  }
  throw std::logic_error("unreachable");
}

double step_size(const ScheduleConfig& cfg, std::int64_t t) {
  require_t(t);
  const double td = static_cast<double>(t);
  switch (cfg.kind) {
    case ScheduleKind::Thm1:
      return 2.0 / (cfg.mu * (td + 2.0 * cfg.kappa));
    case ScheduleKind::PropOriginal:
    case ScheduleKind::PropInterior:
    case ScheduleKind::GeneralizedR:
      return 1.0 / (cfg.mu * (td + cfg.kappa));
    case ScheduleKind::Thm2:
      return 1.0 / (cfg.mu * (2.0 * cfg.kappa / td + (td + 1.0) / 2.0));
    case ScheduleKind::Exponential:
      throw std::invalid_argument("exponential weighting has no step-size rule");
  }
  throw std::logic_error("unreachable");
}

std::vector<double> averaging_factors(const ScheduleConfig& cfg, std::int64_t T) {
  require_T(T);
  require_params(cfg);
  std::vector<double> out(static_cast<std::size_t>(T));
  if (cfg.kind == ScheduleKind::GeneralizedR) {
    double running = 0.0;
    for (std::int64_t t = 1; t <= T; ++t) {
      const double p = std::pow(static_cast<double>(t), cfg.r);
      running += p;
      out[static_cast<std::size_t>(t - 1)] = p / running;
    }
    return out;
  }
  for (std::int64_t t = 1; t <= T; ++t) {
    out[static_cast<std::size_t>(t - 1)] = averaging_factor(cfg, t);
  }
  return out;
}

std::vector<double> step_sizes(const ScheduleConfig& cfg, std::int64_t T) {
  require_T(T);
  std::vector<double> out(static_cast<std::size_t>(T));
  for (std::int64_t t = 1; t <= T; ++t) {
    out[static_cast<std::size_t>(t - 1)] = step_size(cfg, t);
  }
  return out;
}

std::vector<double> weights(const ScheduleConfig& cfg, std::int64_t T) {
  require_T(T);
  require_params(cfg);
  std::vector<double> w(static_cast<std::size_t>(T));
  const double Td = static_cast<double>(T);
  switch (cfg.kind) {
    case ScheduleKind::Thm1:
    case ScheduleKind::Thm2:
      for (std::int64_t t = 1; t <= T; ++t) {
        w[static_cast<std::size_t>(t - 1)] = 2.0 * static_cast<double>(t) / (Td * (Td + 1.0));
      }
      break;
    case ScheduleKind::PropOriginal:
      for (auto& x : w) x = 1.0 / Td;
      break;
    case ScheduleKind::PropInterior:
      w.back() = 1.0;  // output is the last iterate
      break;
    case ScheduleKind::GeneralizedR: {
      const double total = power_sum(cfg.r, T);
      for (std::int64_t t = 1; t <= T; ++t) {
        w[static_cast<std::size_t>(t - 1)] = std::pow(static_cast<double>(t), cfg.r) / total;
      }
      break;
    }
    case ScheduleKind::Exponential: {
      const double a = cfg.decay;
      w[0] = std::pow(1.0 - a, static_cast<double>(T - 1));
      for (std::int64_t t = 2; t <= T; ++t) {
        w[static_cast<std::size_t>(t - 1)] = a * std::pow(1.0 - a, static_cast<double>(T - t));
      }
      break;
    }
  }
  return w;
}

double averaged_variance(const ScheduleConfig& cfg, std::int64_t T) {
  const std::vector<double> w = weights(cfg, T);
  double s = 0.0;
  for (double x : w) s += x * x;
  return s;
}

double effective_tail_samples(const ScheduleConfig& cfg, std::int64_t T) {
  return 1.0 / averaged_variance(cfg, T);
}

double log_tilde(std::int64_t T, std::int64_t t) {
  if (t < 0 || t > T) {
    throw std::invalid_argument("log_tilde requires 0 <= t <= T");
  }
  double s = 0.0;
  for (std::int64_t tau = T; tau > t; --tau) {
    s += 1.0 / static_cast<double>(tau);
  }
  return s;
}

double generalized_variance_approx(double r, std::int64_t T) {
  require_T(T);
  return (1.0 + r) * (1.0 + r) / ((1.0 + 2.0 * r) * static_cast<double>(T));
}

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Thm1: return "thm1";
    case ScheduleKind::PropOriginal: return "prop_original";
    case ScheduleKind::PropInterior: return "prop_interior";
    case ScheduleKind::Thm2: return "thm2";
    case ScheduleKind::GeneralizedR: return "generalized_r";
    case ScheduleKind::Exponential: return "exponential";
  }
  throw std::logic_error("unreachable");
}

ScheduleKind schedule_kind_from_string(std::string_view name) {
  if (name == "thm1") return ScheduleKind::Thm1;
  if (name == "prop_original") return ScheduleKind::PropOriginal;
  if (name == "prop_interior") return ScheduleKind::PropInterior;
  if (name == "thm2") return ScheduleKind::Thm2;
  if (name == "generalized_r") return ScheduleKind::GeneralizedR;
  if (name == "exponential") return ScheduleKind::Exponential;
  throw std::invalid_argument("unknown schedule kind: " + std::string(name));
}

}  // namespace sgdrates
