#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace growth {

/// Normalization constant C of a closed-form solution.
///
/// Held both as a value and as sign / log-magnitude. Absolute-year
/// parameters routinely produce constants such as 1e38 or 1e-168, and some
/// (e.g. C of S = C (a + bt)^(1/b) with small b) do not fit in a double at
/// all; the log form keeps those usable. `value()` is exact when the scale
/// was built from a value and may be 0 or +-inf when only the log form is
/// representable.
class Scale {
 public:
  static Scale from_value(double c);
  static Scale from_log(double log_abs, int sign);
  /// Restores a scale from both stored forms (used when reading records).
  static Scale from_parts(double value, double log_abs, int sign);
  /// The scale C with C * exp(exponent) == target.
  static Scale anchored(double target, double exponent);

  double value() const noexcept { return value_; }
  double log_abs() const noexcept { return log_abs_; }
  int sign() const noexcept { return sign_; }
  /// True when value() is finite and faithfully represents C.
  bool representable() const noexcept;

  /// C * exp(exponent), computed directly when possible and in log space
  /// otherwise. May return +-inf on genuine overflow.
  double times_exp(double exponent) const noexcept;

  friend bool operator==(const Scale&, const Scale&) = default;

 private:
  Scale(double value, double log_abs, int sign) : value_(value), log_abs_(log_abs), sign_(sign) {}

  double value_ = 0.0;
  double log_abs_ = 0.0;
  int sign_ = 0;
};

/// S = C e^{rt}; rate r.
struct Exponential {
  double r = 0.0;
  std::optional<Scale> C;
  friend bool operator==(const Exponential&, const Exponential&) = default;
};

/// S = C exp(at + bt^2/2); rate a + bt.
struct LinearRateTime {
  double a = 0.0;
  double b = 0.0;
  std::optional<Scale> C;
  friend bool operator==(const LinearRateTime&, const LinearRateTime&) = default;
};

/// S = C exp(P(t)) where P' = f(t) = sum_k coeffs[k] t^k.
struct PolyRateTime {
  std::vector<double> coeffs;
  std::optional<Scale> C;
  friend bool operator==(const PolyRateTime&, const PolyRateTime&) = default;
};

/// Datum (t0, S0) a size-dependent model was normalized to. 1/S is then
/// evaluated relative to it, so the anchor is reproduced exactly even when
/// 1/S0 is tiny next to the absolute-year terms of C.
struct Anchor {
  double time = 0.0;
  double size = 0.0;
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// First-order hyperbolic growth S = 1 / (C - bt); rate bS.
struct Hyperbolic {
  double b = 0.0;
  std::optional<double> C;
  std::optional<Anchor> anchor = std::nullopt;  ///< set by normalize
  friend bool operator==(const Hyperbolic&, const Hyperbolic&) = default;
};

/// S = 1 / (C e^{-at} - b/a); rate a + bS. Pseudo-hyperbolic for b > 0,
/// logistic for b < 0, exponential for b = 0.
struct LinearRateSize {
  double a = 0.0;
  double b = 0.0;
  std::optional<Scale> C;
  std::optional<Anchor> anchor = std::nullopt;  ///< set by normalize
  friend bool operator==(const LinearRateSize&, const LinearRateSize&) = default;
};

/// S = C (a + bt)^{1/b}; rate 1 / (a + bt). Requires b != 0.
struct HyperbolicRateTime {
  double a = 0.0;
  double b = 0.0;
  std::optional<Scale> C;
  friend bool operator==(const HyperbolicRateTime&, const HyperbolicRateTime&) = default;
};

/// S = C exp((e^a / b) e^{bt}); rate exp(a + bt). For b = 0 the exponent is
/// taken as e^a t (constant rate e^a).
struct ExpRateTime {
  double a = 0.0;
  double b = 0.0;
  std::optional<Scale> C;
  friend bool operator==(const ExpRateTime&, const ExpRateTime&) = default;
};

class GrowthModel;

/// S = exp(F) where `inner` describes F = ln S.
struct LogWrapped {
  std::shared_ptr<const GrowthModel> inner;
};

enum class ModelKind {
  Exponential,
  LinearRateTime,
  PolyRateTime,
  Hyperbolic,
  LinearRateSize,
  HyperbolicRateTime,
  ExpRateTime,
  LogWrapped,
};

std::string_view kind_name(ModelKind kind) noexcept;

/// Immutable tagged union over the growth-model catalog. Constructing one
/// validates the variant's invariants (GrowthError InvalidModel).
class GrowthModel {
 public:
  using Variant = std::variant<Exponential, LinearRateTime, PolyRateTime, Hyperbolic,
                               LinearRateSize, HyperbolicRateTime, ExpRateTime, LogWrapped>;

  GrowthModel(Exponential m);
  GrowthModel(LinearRateTime m);
  GrowthModel(PolyRateTime m);
  GrowthModel(Hyperbolic m);
  GrowthModel(LinearRateSize m);
  GrowthModel(HyperbolicRateTime m);
  GrowthModel(ExpRateTime m);
  GrowthModel(LogWrapped m);

  ModelKind kind() const noexcept { return static_cast<ModelKind>(v_.index()); }
  const Variant& variant() const noexcept { return v_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }

  /// True when every normalization constant (including nested ones) is set.
  bool is_normalized() const noexcept;

  friend bool operator==(const GrowthModel& lhs, const GrowthModel& rhs);

 private:
  Variant v_;
};

// Factories. `C` left empty yields an unnormalized model (see normalize).
GrowthModel exponential(double r, std::optional<double> C = std::nullopt);
GrowthModel linear_rate_time(double a, double b, std::optional<double> C = std::nullopt);
GrowthModel poly_rate_solution(std::vector<double> coeffs, std::optional<double> C = std::nullopt);
GrowthModel hyperbolic(double b, std::optional<double> C = std::nullopt);
GrowthModel linear_rate_size(double a, double b, std::optional<double> C = std::nullopt);
GrowthModel hyperbolic_rate_time(double a, double b, std::optional<double> C = std::nullopt);
GrowthModel exp_rate_time(double a, double b, std::optional<double> C = std::nullopt);
GrowthModel log_wrap(GrowthModel inner);

/// Closed-form size at year t.
/// Errors: UnnormalizedModel, OutsideDomain (at/after a singularity, or
/// where a + bt <= 0 for HyperbolicRateTime), Overflow, InvalidModel when
/// the parameters give a non-positive size.
double evaluate(const GrowthModel& m, double t);

/// Growth rate (1/S) dS/dt at year t. Size-dependent variants and
/// LogWrapped need a normalized model.
double rate_at(const GrowthModel& m, double t);

/// Right-hand side of the defining equation (1/S) dS/dt = f(t, S), using
/// only the model's shape parameters. This is what an ODE integrator
/// should integrate; it never touches the closed form.
double defining_rate(const GrowthModel& m, double t, double size);

/// dS/dt at t, i.e. S(t) * rate_at(m, t).
double gradient(const GrowthModel& m, double t);

/// Replace the normalization constant so that evaluate(result, t0) == S0.
/// Errors: NonPositiveAnchor, UnreachableAnchor, OutsideDomain, Overflow.
GrowthModel normalize(const GrowthModel& m, double t0, double S0);

struct Extremum {
  double time;
  std::optional<double> size;  ///< absent for unnormalized models
  friend bool operator==(const Extremum&, const Extremum&) = default;
};

struct ModelDiagnostics {
  std::optional<double> singularity_time;
  std::optional<Extremum> extremum;
  std::optional<double> size_limit;
  std::optional<double> reciprocal_limit;
  friend bool operator==(const ModelDiagnostics&, const ModelDiagnostics&) = default;
};

/// Structural features of a model: finite-time singularity, maximum,
/// logistic ceiling and the limit of 1/S. Absent fields mean "does not
/// apply" (or, for the singularity of size-dependent variants, "C not set").
ModelDiagnostics diagnostics(const GrowthModel& m);

}  // namespace growth
