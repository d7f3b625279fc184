#include "growth/models.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "growth/error.hpp"

namespace growth {

namespace {

constexpr std::string_view kModule = "models";

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void invalid(const std::string& what) {
  throw GrowthError(Errc::InvalidModel, kModule, what);
}

[[noreturn]] void outside(double t, const std::string& what) {
  throw GrowthError(Errc::OutsideDomain, kModule, what + " (t = " + std::to_string(t) + ")");
}

[[noreturn]] void unnormalized() {
  throw GrowthError(Errc::UnnormalizedModel, kModule, "normalization constant C is not set");
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) invalid(std::string(name) + " must be finite");
}

const Scale& scale_of(const std::optional<Scale>& c) {
  if (!c) unnormalized();
  return *c;
}

std::optional<Scale> to_scale(std::optional<double> c) {
  if (!c) return std::nullopt;
  return Scale::from_value(*c);
}

// Exponent E(t) of the multiplicative variants, S = C exp(E(t)).
double exponent_of(const Exponential& m, double t) { return m.r * t; }

double exponent_of(const LinearRateTime& m, double t) { return t * (m.a + 0.5 * m.b * t); }

double exponent_of(const PolyRateTime& m, double t) {
  // Horner on the term-by-term antiderivative, constant term dropped.
  double acc = 0.0;
  for (std::size_t k = m.coeffs.size(); k-- > 0;) {
    acc = acc * t + m.coeffs[k] / static_cast<double>(k + 1);
  }
  return acc * t;
}

double exponent_of(const HyperbolicRateTime& m, double t) {
  const double base = m.a + m.b * t;
  if (!(base > 0.0)) outside(t, "a + bt must be positive");
  return std::log(base) / m.b;
}

double exponent_of(const ExpRateTime& m, double t) {
  if (m.b == 0.0) return std::exp(m.a) * t;
  return std::exp(m.a + m.b * t) / m.b;
}

double poly_rate(const PolyRateTime& m, double t) {
  double acc = 0.0;
  for (std::size_t k = m.coeffs.size(); k-- > 0;) acc = acc * t + m.coeffs[k];
  return acc;
}

double hyperbolic_rate_time_rate(const HyperbolicRateTime& m, double t) {
  const double base = m.a + m.b * t;
  if (!(base > 0.0)) outside(t, "a + bt must be positive");
  return 1.0 / base;
}

// Signed value of the model: S for top-level models, F for the inner model
// of a LogWrapped. Size-dependent variants only have a positive branch.
double value_of(const GrowthModel& m, double t) {
  return std::visit(
      overloaded{
          [t](const Hyperbolic& h) {
            if (!h.C) unnormalized();
            const double d = h.anchor ? 1.0 / h.anchor->size - h.b * (t - h.anchor->time)
                                      : *h.C - h.b * t;
            if (!(d > 0.0)) outside(t, "at or beyond the hyperbolic singularity");
            return 1.0 / d;
          },
          [t](const LinearRateSize& l) {
            // 1/S = e^{-a dt} / S0 + (b/a) (e^{-a dt} - 1) about the anchor.
            const double recip =
                l.anchor ? std::exp(-l.a * (t - l.anchor->time)) / l.anchor->size +
                               l.b / l.a * std::expm1(-l.a * (t - l.anchor->time))
                         : scale_of(l.C).times_exp(-l.a * t) - l.b / l.a;
            if (!(recip > 0.0)) outside(t, "at or beyond the pseudo-hyperbolic singularity");
            return 1.0 / recip;
          },
          [t](const LogWrapped& w) {
            const double f = value_of(*w.inner, t);
            return std::exp(f);
          },
          [t](const auto& mult) { return scale_of(mult.C).times_exp(exponent_of(mult, t)); },
      },
      m.variant());
}

double rate_of(const GrowthModel& m, double t) {
  return std::visit(
      overloaded{
          [](const Exponential& e) { return e.r; },
          [t](const LinearRateTime& l) { return l.a + l.b * t; },
          [t](const PolyRateTime& p) { return poly_rate(p, t); },
          [t, &m](const Hyperbolic& h) { return h.b * value_of(m, t); },
          [t, &m](const LinearRateSize& l) { return l.a + l.b * value_of(m, t); },
          [t](const HyperbolicRateTime& h) { return hyperbolic_rate_time_rate(h, t); },
          [t](const ExpRateTime& e) { return std::exp(e.a + e.b * t); },
          [t](const LogWrapped& w) {
            // (1/S) dS/dt = dF/dt = F * (1/F) dF/dt
            return rate_of(*w.inner, t) * value_of(*w.inner, t);
          },
      },
      m.variant());
}

GrowthModel normalize_to(const GrowthModel& m, double t0, double target);

template <class Mult>
GrowthModel anchor_multiplicative(Mult copy, double t0, double target) {
  const double e = exponent_of(copy, t0);
  if (!std::isfinite(e)) {
    throw GrowthError(Errc::Overflow, kModule, "exponent is not finite at the anchor time");
  }
  copy.C = Scale::anchored(target, e);
  return GrowthModel(std::move(copy));
}

GrowthModel normalize_to(const GrowthModel& m, double t0, double target) {
  return std::visit(
      overloaded{
          [&](const Hyperbolic& h) -> GrowthModel {
            if (!(target > 0.0)) {
              throw GrowthError(Errc::NonPositiveAnchor, kModule,
                                "hyperbolic anchor must be positive");
            }
            return Hyperbolic{h.b, 1.0 / target + h.b * t0, Anchor{t0, target}};
          },
          [&](const LinearRateSize& l) -> GrowthModel {
            if (!(target > 0.0)) {
              throw GrowthError(Errc::NonPositiveAnchor, kModule,
                                "pseudo-hyperbolic/logistic anchor must be positive");
            }
            if (l.a > 0.0 && l.b < 0.0 && target >= l.a / -l.b) {
              throw GrowthError(Errc::UnreachableAnchor, kModule,
                                "anchor at or above the logistic limit a/|b|");
            }
            // C e^{-a t0} = 1/S0 + b/a
            const double k = 1.0 / target + l.b / l.a;
            if (k == 0.0) {
              throw GrowthError(Errc::UnreachableAnchor, kModule,
                                "anchor sits on the equilibrium S = -a/b");
            }
            LinearRateSize copy = l;
            copy.C = Scale::anchored(k, -l.a * t0);
            copy.anchor = Anchor{t0, target};
            return copy;
          },
          [&](const LogWrapped& w) -> GrowthModel {
            if (!(target > 0.0)) {
              throw GrowthError(Errc::NonPositiveAnchor, kModule, "log-wrapped anchor must be > 0");
            }
            return log_wrap(normalize_to(*w.inner, t0, std::log(target)));
          },
          [&](const auto& mult) -> GrowthModel { return anchor_multiplicative(mult, t0, target); },
      },
      m.variant());
}

void validate_scale(const std::optional<Scale>& c) {
  if (c && std::isnan(c->log_abs())) invalid("C is NaN");
}

}  // namespace

// ---------------------------------------------------------------------------
// Scale

Scale Scale::from_value(double c) {
  if (std::isnan(c) || std::isinf(c)) invalid("C must be finite");
  if (c == 0.0) return Scale(0.0, -std::numeric_limits<double>::infinity(), 0);
  return Scale(c, std::log(std::abs(c)), c > 0.0 ? 1 : -1);
}

Scale Scale::from_log(double log_abs, int sign) {
  if (sign == 0) return Scale(0.0, -std::numeric_limits<double>::infinity(), 0);
  if (!std::isfinite(log_abs)) invalid("log|C| must be finite");
  const double s = sign > 0 ? 1.0 : -1.0;
  return Scale(s * std::exp(log_abs), log_abs, sign > 0 ? 1 : -1);
}

Scale Scale::from_parts(double value, double log_abs, int sign) {
  if (sign == 0) return from_value(0.0);
  if (std::isnan(value) || !std::isfinite(log_abs)) invalid("inconsistent scale record");
  return Scale(value, log_abs, sign > 0 ? 1 : -1);
}

Scale Scale::anchored(double target, double exponent) {
  if (target == 0.0) return from_value(0.0);
  const double g = std::exp(-exponent);
  if (std::isnormal(g)) {
    const double c = target * g;
    if (std::isnormal(c)) return from_value(c);
  }
  return from_log(std::log(std::abs(target)) - exponent, target > 0.0 ? 1 : -1);
}

bool Scale::representable() const noexcept {
  if (sign_ == 0) return true;
  return std::isnormal(value_);
}

double Scale::times_exp(double exponent) const noexcept {
  if (sign_ == 0) return 0.0;
  if (std::isnormal(value_)) {
    const double g = std::exp(exponent);
    if (std::isnormal(g)) {
      const double r = value_ * g;
      if (std::isnormal(r)) return r;
    }
  }
  return static_cast<double>(sign_) * std::exp(log_abs_ + exponent);
}

// ---------------------------------------------------------------------------
// GrowthModel

GrowthModel::GrowthModel(Exponential m) : v_(std::move(m)) {
  const auto& e = std::get<Exponential>(v_);
  require_finite(e.r, "r");
  validate_scale(e.C);
}

GrowthModel::GrowthModel(LinearRateTime m) : v_(std::move(m)) {
  const auto& l = std::get<LinearRateTime>(v_);
  require_finite(l.a, "a");
  require_finite(l.b, "b");
  validate_scale(l.C);
}

GrowthModel::GrowthModel(PolyRateTime m) : v_(std::move(m)) {
  const auto& p = std::get<PolyRateTime>(v_);
  if (p.coeffs.empty()) invalid("rate polynomial needs at least one coefficient");
  for (double c : p.coeffs) require_finite(c, "polynomial coefficient");
  validate_scale(p.C);
}

GrowthModel::GrowthModel(Hyperbolic m) : v_(std::move(m)) {
  const auto& h = std::get<Hyperbolic>(v_);
  require_finite(h.b, "b");
  if (h.C) require_finite(*h.C, "C");
}

GrowthModel::GrowthModel(LinearRateSize m) : v_(std::move(m)) {
  const auto& l = std::get<LinearRateSize>(v_);
  require_finite(l.a, "a");
  require_finite(l.b, "b");
  if (l.a == 0.0) invalid("linear-rate-size model requires a != 0");
  validate_scale(l.C);
}

GrowthModel::GrowthModel(HyperbolicRateTime m) : v_(std::move(m)) {
  const auto& h = std::get<HyperbolicRateTime>(v_);
  require_finite(h.a, "a");
  require_finite(h.b, "b");
  if (h.b == 0.0) invalid("hyperbolic-rate model requires b != 0; use Exponential");
  validate_scale(h.C);
}

GrowthModel::GrowthModel(ExpRateTime m) : v_(std::move(m)) {
  const auto& e = std::get<ExpRateTime>(v_);
  require_finite(e.a, "a");
  require_finite(e.b, "b");
  validate_scale(e.C);
}

GrowthModel::GrowthModel(LogWrapped m) : v_(std::move(m)) {
  if (!std::get<LogWrapped>(v_).inner) invalid("log-wrapped model has no inner model");
}

bool GrowthModel::is_normalized() const noexcept {
  return std::visit(overloaded{
                        [](const Hyperbolic& h) { return h.C.has_value(); },
                        [](const LogWrapped& w) { return w.inner->is_normalized(); },
                        [](const auto& mult) { return mult.C.has_value(); },
                    },
                    v_);
}

bool operator==(const GrowthModel& lhs, const GrowthModel& rhs) {
  if (lhs.v_.index() != rhs.v_.index()) return false;
  if (const auto* lw = lhs.get_if<LogWrapped>()) {
    return *lw->inner == *rhs.get_if<LogWrapped>()->inner;
  }
  return std::visit(
      [&rhs](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, LogWrapped>) {
          return false;  // handled above
        } else {
          return l == std::get<T>(rhs.v_);
        }
      },
      lhs.v_);
}

std::string_view kind_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Exponential: return "exponential";
    case ModelKind::LinearRateTime: return "linear_rate_time";
    case ModelKind::PolyRateTime: return "poly_rate_time";
    case ModelKind::Hyperbolic: return "hyperbolic";
    case ModelKind::LinearRateSize: return "linear_rate_size";
    case ModelKind::HyperbolicRateTime: return "hyperbolic_rate_time";
    case ModelKind::ExpRateTime: return "exp_rate_time";
    case ModelKind::LogWrapped: return "log";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Factories

GrowthModel exponential(double r, std::optional<double> C) {
  return Exponential{r, to_scale(C)};
}

GrowthModel linear_rate_time(double a, double b, std::optional<double> C) {
  return LinearRateTime{a, b, to_scale(C)};
}

GrowthModel poly_rate_solution(std::vector<double> coeffs, std::optional<double> C) {
  return PolyRateTime{std::move(coeffs), to_scale(C)};
}

GrowthModel hyperbolic(double b, std::optional<double> C) { return Hyperbolic{b, C}; }

GrowthModel linear_rate_size(double a, double b, std::optional<double> C) {
  return LinearRateSize{a, b, to_scale(C)};
}

GrowthModel hyperbolic_rate_time(double a, double b, std::optional<double> C) {
  return HyperbolicRateTime{a, b, to_scale(C)};
}

GrowthModel exp_rate_time(double a, double b, std::optional<double> C) {
  return ExpRateTime{a, b, to_scale(C)};
}

GrowthModel log_wrap(GrowthModel inner) {
  return LogWrapped{std::make_shared<const GrowthModel>(std::move(inner))};
}

// ---------------------------------------------------------------------------
// Operations

double evaluate(const GrowthModel& m, double t) {
  const double s = value_of(m, t);
  if (std::isinf(s)) {
    throw GrowthError(Errc::Overflow, kModule, "size exceeds double range at t = " +
                                                   std::to_string(t));
  }
  if (!(s > 0.0)) {
    throw GrowthError(Errc::InvalidModel, kModule,
                      "parameters give a non-positive size at t = " + std::to_string(t));
  }
  return s;
}

double rate_at(const GrowthModel& m, double t) {
  const double r = rate_of(m, t);
  if (std::isinf(r)) {
    throw GrowthError(Errc::Overflow, kModule, "rate exceeds double range");
  }
  return r;
}

double defining_rate(const GrowthModel& m, double t, double size) {
  return std::visit(
      overloaded{
          [size](const Hyperbolic& h) { return h.b * size; },
          [size](const LinearRateSize& l) { return l.a + l.b * size; },
          [t, size](const LogWrapped& w) {
            const double f = std::log(size);
            return f * defining_rate(*w.inner, t, f);
          },
          [t, &m](const auto&) { return rate_of(m, t); },
      },
      m.variant());
}

double gradient(const GrowthModel& m, double t) { return evaluate(m, t) * rate_at(m, t); }

GrowthModel normalize(const GrowthModel& m, double t0, double S0) {
  if (!(S0 > 0.0) || !std::isfinite(S0)) {
    throw GrowthError(Errc::NonPositiveAnchor, kModule, "anchor size must be finite and > 0");
  }
  if (!std::isfinite(t0)) {
    throw GrowthError(Errc::NonPositiveAnchor, kModule, "anchor time must be finite");
  }
  return normalize_to(m, t0, S0);
}

ModelDiagnostics diagnostics(const GrowthModel& m) {
  ModelDiagnostics d;
  std::visit(
      overloaded{
          [&](const LinearRateTime& l) {
            if (l.b < 0.0) {
              const double tm = l.a / -l.b;
              Extremum e{tm, std::nullopt};
              if (l.C) {
                try {
                  e.size = evaluate(m, tm);
                } catch (const GrowthError&) {
                }
              }
              d.extremum = e;
            }
          },
          [&](const Hyperbolic& h) {
            if (h.b > 0.0 && h.C) {
              d.singularity_time = h.anchor ? h.anchor->time + 1.0 / (h.b * h.anchor->size)
                                            : *h.C / h.b;
            }
          },
          [&](const LinearRateSize& l) {
            if (l.b > 0.0) {
              d.reciprocal_limit = -l.b / l.a;
              // 1/S = C e^{-at} - b/a reaches zero going forward only if aC > 0.
              if (l.anchor && l.C && l.C->sign() != 0 && (l.a > 0.0) == (l.C->sign() > 0)) {
                // e^{-a dt} (1/S0 + b/a) = b/a  =>  dt = ln(1 + a / (b S0)) / a
                d.singularity_time =
                    l.anchor->time + std::log1p(l.a / (l.b * l.anchor->size)) / l.a;
              } else if (l.C && l.C->sign() != 0 && (l.a > 0.0) == (l.C->sign() > 0)) {
                // t_s = -(1/a) ln(b / (aC)), evaluated through log|C|.
                d.singularity_time = -(std::log(l.b / std::abs(l.a)) - l.C->log_abs()) / l.a;
              }
            } else if (l.b < 0.0 && l.a > 0.0) {
              d.size_limit = l.a / -l.b;
            }
          },
          [&](const HyperbolicRateTime& h) {
            // rate 1/(a + bt) diverges at a + bt = 0; for b < 0 that lies ahead.
            if (h.b < 0.0) d.singularity_time = -h.a / h.b;
          },
          [&](const LogWrapped& w) {
            const ModelDiagnostics inner = diagnostics(*w.inner);
            d.singularity_time = inner.singularity_time;
            if (inner.extremum) {
              Extremum e{inner.extremum->time, std::nullopt};
              if (inner.extremum->size) {
                const double s = std::exp(*inner.extremum->size);
                if (std::isfinite(s)) e.size = s;
              }
              d.extremum = e;
            }
            if (inner.size_limit) {
              const double s = std::exp(*inner.size_limit);
              if (std::isfinite(s)) d.size_limit = s;
            }
          },
          [](const auto&) {},
      },
      m.variant());
  return d;
}

}  // namespace growth
