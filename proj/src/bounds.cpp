#include "sgdrates/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sgdrates {

namespace {

void require_constants(double D, double L, double Q, double kappa, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("bound requires T >= 1");
  if (!(kappa >= 1.0)) throw std::invalid_argument("bound requires kappa >= 1");
  if (!(D > 0.0) || !(L > 0.0) || !(Q >= 0.0)) {
    throw std::invalid_argument("bound requires D > 0, L > 0, Q >= 0");
  }
}

}  // namespace

BoundTriple bound_thm1(double D, double L, double Q, double kappa, std::int64_t T) {
  require_constants(D, L, Q, kappa, T);
  const double Td = static_cast<double>(T);
  const double q2 = Q * Q;
  BoundTriple bt;
  bt.source = BoundSource::Thm1;
  bt.k_bar = D * D * L / Td + 2.0 * kappa * q2 / (L * Td);
  bt.k_tilde = 4.0 * D * Q * (kappa + 1.0) / std::pow(Td, 1.5) +
               2.0 * std::sqrt(2.0) * kappa * q2 / (L * Td) +
               4.0 * std::sqrt(2.0) * std::pow(kappa, 1.5) * q2 * std::sqrt(1.0 + std::log(Td)) /
                   (L * std::pow(Td, 1.5));
  bt.k_hat = 10.0 * kappa * q2 / (L * Td);
  return bt;
}

BoundTriple bound_prop_original(double D, double L, double Q, double kappa, std::int64_t T) {
  require_constants(D, L, Q, kappa, T);
  const double Td = static_cast<double>(T);
  const double q2 = Q * Q;
  const double log_term = 1.0 + std::log(Td);
  BoundTriple bt;
  bt.source = BoundSource::PropOriginal;
  bt.k_bar = L * D * D / (2.0 * Td) + kappa * q2 * log_term / (2.0 * L * Td);
  bt.k_tilde = D * Q * std::sqrt(kappa + 1.0) / Td + kappa * q2 * std::sqrt(log_term) / (L * Td);
  bt.k_hat = 6.0 * kappa * q2 / (L * Td);
  return bt;
}

BoundTriple bound_prop_interior(double D, double L, double Q, double kappa, std::int64_t T) {
  require_constants(D, L, Q, kappa, T);
  const double Td = static_cast<double>(T);
  const double q2 = Q * Q;
  const double k2 = kappa * kappa;
  const double tk = Td + kappa;
  const double log_term = 1.0 + std::log(Td);
  BoundTriple bt;
  bt.source = BoundSource::PropInterior;
  bt.k_bar = D * D * L * (kappa + 1.0) * (kappa + 1.0) / (2.0 * tk * tk) +
             k2 * q2 * (Td + kappa * log_term) / (2.0 * L * tk * tk);
  bt.k_tilde = D * Q * (kappa + 1.0) * (kappa + 1.0) / (std::sqrt(2.0) * std::pow(tk, 1.5)) +
               k2 * q2 / (2.0 * L * tk) +
               k2 * q2 * std::sqrt(kappa * Td * log_term) / (2.0 * L * tk * tk);
  bt.k_hat = 6.0 * k2 * q2 / (L * tk);
  return bt;
}

BoundTriple bound_thm2(double D, double L, double Q, double kappa, std::int64_t T) {
  require_constants(D, L, Q, kappa, T);
  const double Td = static_cast<double>(T);
  const double q2 = Q * Q;
  BoundTriple bt;
  bt.source = BoundSource::Thm2;
  bt.k_bar = 2.0 * D * D * L / (Td * Td) + 2.0 * kappa * q2 / (L * Td);
  bt.k_tilde = std::sqrt(20.0 * kappa) * D * Q / std::pow(Td, 1.5) +
               std::sqrt(10.0) * kappa * q2 / (2.0 * L * Td);
  bt.k_hat = 8.0 * kappa * q2 / (L * Td);
  return bt;
}

BoundTriple bound_for(BoundSource source, double D, double L, double Q, double kappa,
                      std::int64_t T) {
  switch (source) {
    case BoundSource::Thm1: return bound_thm1(D, L, Q, kappa, T);
    case BoundSource::PropOriginal: return bound_prop_original(D, L, Q, kappa, T);
    case BoundSource::PropInterior: return bound_prop_interior(D, L, Q, kappa, T);
    case BoundSource::Thm2: return bound_thm2(D, L, Q, kappa, T);
  }
  throw std::logic_error("unreachable");
}

double quantile(const BoundTriple& bt, double theta) {
  if (!(theta >= 0.0)) {
    throw std::invalid_argument("quantile requires theta >= 0");
  }
  return bt.k_bar + std::sqrt(2.0 * theta) * bt.k_tilde + theta * bt.k_hat;
}

double lemma0_tail_bound(double sigma, double B, double eps) {
  if (!(sigma > 0.0) || !(B > 0.0) || !(eps >= 0.0)) {
    throw std::invalid_argument("lemma0_tail_bound requires sigma > 0, B > 0, eps >= 0");
  }
  return std::exp(-eps * eps / (2.0 * sigma * sigma + 2.0 * eps * B));
}

double lemma0_threshold(double sigma, double B, double theta) {
  if (!(sigma > 0.0) || !(B > 0.0) || !(theta >= 0.0)) {
    throw std::invalid_argument("lemma0_threshold requires sigma > 0, B > 0, theta >= 0");
  }
  return std::sqrt(2.0 * theta * sigma * sigma) + theta * B;
}

std::string_view to_string(BoundSource source) {
  switch (source) {
    case BoundSource::Thm1: return "thm1";
    case BoundSource::PropOriginal: return "prop_original";
    case BoundSource::PropInterior: return "prop_interior";
    case BoundSource::Thm2: return "thm2";
  }
  throw std::logic_error("unreachable");
}

BoundSource bound_source_from_string(std::string_view name) {
  if (name == "thm1") return BoundSource::Thm1;
  if (name == "prop_original") return BoundSource::PropOriginal;
  if (name == "prop_interior") return BoundSource::PropInterior;
  if (name == "thm2") return BoundSource::Thm2;
  throw std::invalid_argument("unknown bound source: " + std::string(name));
}

std::optional<BoundSource> bound_source_for(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Thm1: return BoundSource::Thm1;
    case ScheduleKind::PropOriginal: return BoundSource::PropOriginal;
    case ScheduleKind::PropInterior: return BoundSource::PropInterior;
    case ScheduleKind::Thm2: return BoundSource::Thm2;
    default: return std::nullopt;
  }
}

}  // namespace sgdrates
