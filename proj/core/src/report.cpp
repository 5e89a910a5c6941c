#include "symred/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace symred {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Approx: return "APPROX";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  if (s == "PASS") return Verdict::Pass;
  if (s == "FAIL") return Verdict::Fail;
  if (s == "APPROX") return Verdict::Approx;
  if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
  return std::nullopt;
}

Verdict classify(double residual, double pass_threshold, double fail_threshold) {
  if (!std::isfinite(residual)) return Verdict::Fail;
  if (residual < pass_threshold) return Verdict::Pass;
  if (residual > fail_threshold) return Verdict::Fail;
  return Verdict::Inconclusive;
}

bool CheckReport::has_metric(std::string_view name) const {
  for (const auto& m : metrics)
    if (m.name == name) return true;
  return false;
}

double CheckReport::metric(std::string_view name) const {
  for (const auto& m : metrics)
    if (m.name == name) return m.value;
  throw std::out_of_range("no metric named " + std::string(name));
}

void CheckReport::set_metric(std::string name, double value) {
  for (auto& m : metrics) {
    if (m.name == name) {
      m.value = value;
      return;
    }
  }
  metrics.push_back({std::move(name), value});
}

void ResidualAccumulator::add(double residual, double value_scale,
                              const std::function<Witness()>& make_witness) {
  ++count_;
  add_scale(value_scale);
  if (!std::isfinite(residual)) {
    if (!nan_seen_ && make_witness) {
      worst_ = make_witness();
      worst_->residual = residual;
    }
    nan_seen_ = true;
    return;
  }
  sum_ += residual;
  if (!nan_seen_ && make_witness && (!worst_ || residual > max_)) {
    worst_ = make_witness();
    worst_->residual = residual;
  }
  if (residual > max_) max_ = residual;
}

void ResidualAccumulator::add_scale(double value_scale) {
  if (std::isfinite(value_scale) && std::abs(value_scale) > scale_) scale_ = std::abs(value_scale);
}

CheckReport ResidualAccumulator::finish(std::string name, std::string op, const Tolerances& tol,
                                        std::uint64_t seed) const {
  CheckReport r;
  r.name = std::move(name);
  r.op = std::move(op);
  r.seed = seed;
  r.samples = count_;
  r.max_residual = nan_seen_ ? std::numeric_limits<double>::infinity() : max_;
  r.mean_residual = mean();
  r.scale = scale_;
  r.tolerance = tol.pass_threshold(scale_);
  r.fail_threshold = tol.fail;
  r.verdict = classify(r.max_residual, r.tolerance, r.fail_threshold);
  if (r.verdict != Verdict::Pass) r.witness = worst_;
  return r;
}

}  // namespace symred
