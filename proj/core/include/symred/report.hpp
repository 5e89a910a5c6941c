#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symred/types.hpp"

namespace symred {

enum class Verdict { Pass, Fail, Approx, Inconclusive };

const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

/// A residual passes when below atol + rtol * scale and fails when above `fail`.
struct Tolerances {
  double atol = 1e-7;
  double rtol = 1e-6;
  double fail = 1e-3;

  static Tolerances absolute(double pass, double fail = 1e-3) { return {pass, 0.0, fail}; }
  double pass_threshold(double scale) const { return atol + rtol * scale; }
};

Verdict classify(double residual, double pass_threshold, double fail_threshold);

struct Witness {
  Vec point;
  std::vector<Vec> vectors;
  double residual = 0.0;
  std::string note;
};

struct Metric {
  std::string name;
  double value = 0.0;
};

struct CheckReport {
  std::string name;
  std::string op;
  std::string anchor;
  std::uint64_t seed = 0;
  int samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double scale = 0.0;
  double tolerance = 0.0;
  double fail_threshold = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Witness> witness;
  std::vector<Metric> metrics;
  std::vector<std::string> notes;

  bool passed() const { return verdict == Verdict::Pass; }
  bool has_metric(std::string_view name) const;
  double metric(std::string_view name) const;
  void set_metric(std::string name, double value);
};

/// Running max/mean of residuals, remembering the worst sample.
class ResidualAccumulator {
 public:
  void add(double residual, double value_scale, const std::function<Witness()>& make_witness = {});
  void add_scale(double value_scale);

  int count() const { return count_; }
  double max() const { return max_; }
  double mean() const { return count_ ? sum_ / count_ : 0.0; }
  double scale() const { return scale_; }
  const std::optional<Witness>& worst() const { return worst_; }

  CheckReport finish(std::string name, std::string op, const Tolerances& tol,
                     std::uint64_t seed = 0) const;

 private:
  int count_ = 0;
  double max_ = 0.0;
  double sum_ = 0.0;
  double scale_ = 0.0;
  bool nan_seen_ = false;
  std::optional<Witness> worst_;
};

}  // namespace symred
