#include "growth/model_record.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <system_error>

#include "growth/error.hpp"

namespace growth {

namespace {

constexpr std::string_view kModule = "model_record";
constexpr std::string_view kLogPrefix = "log:";

[[noreturn]] void bad(const std::string& what) {
  throw GrowthError(Errc::InvalidRecord, kModule, what);
}

using Params = std::vector<std::pair<std::string, double>>;

void push_scale(Params& p, const std::optional<Scale>& c) {
  if (!c) return;
  if (c->representable()) p.emplace_back("C", c->value());
  if (c->sign() != 0) {
    p.emplace_back("ln_abs_C", c->log_abs());
    if (!c->representable()) p.emplace_back("sign_C", static_cast<double>(c->sign()));
  }
}

void push_anchor(Params& p, const std::optional<Anchor>& a) {
  if (!a) return;
  p.emplace_back("t0", a->time);
  p.emplace_back("S0", a->size);
}

class ParamReader {
 public:
  explicit ParamReader(const Params& p) {
    for (const auto& [k, v] : p) {
      if (!values_.emplace(k, v).second) bad("duplicate parameter '" + k + "'");
    }
  }

  double need(const std::string& name) {
    auto it = values_.find(name);
    if (it == values_.end()) bad("missing parameter '" + name + "'");
    double v = it->second;
    values_.erase(it);
    return v;
  }

  std::optional<double> maybe(const std::string& name) {
    auto it = values_.find(name);
    if (it == values_.end()) return std::nullopt;
    double v = it->second;
    values_.erase(it);
    return v;
  }

  std::optional<Scale> scale() {
    const auto c = maybe("C");
    const auto ln = maybe("ln_abs_C");
    const auto sign = maybe("sign_C");
    if (!c && !ln) {
      if (sign) bad("sign_C without ln_abs_C");
      return std::nullopt;
    }
    if (c && !ln) return Scale::from_value(*c);
    if (c) {
      if (*c == 0.0) bad("ln_abs_C given for C = 0");
      if (std::abs(std::log(std::abs(*c)) - *ln) > 1e-12 * std::max(1.0, std::abs(*ln))) {
        bad("C and ln_abs_C disagree");
      }
      return Scale::from_parts(*c, *ln, *c > 0.0 ? 1 : -1);
    }
    const int s = sign ? (*sign < 0.0 ? -1 : 1) : 1;
    return Scale::from_log(*ln, s);
  }

  std::optional<double> plain_c() {
    // Hyperbolic's C is additive in 1/S, so it is stored as a plain value.
    return maybe("C");
  }

  std::optional<Anchor> anchor() {
    const auto t0 = maybe("t0");
    const auto s0 = maybe("S0");
    if (t0.has_value() != s0.has_value()) bad("t0 and S0 must be given together");
    if (!t0) return std::nullopt;
    return Anchor{*t0, *s0};
  }

  void finish() const {
    if (!values_.empty()) bad("unknown parameter '" + values_.begin()->first + "'");
  }

  std::map<std::string, double>& values() { return values_; }

 private:
  std::map<std::string, double> values_;
};

// An anchored model is rebuilt by normalizing its shape; a C given alongside
// must be the one normalization produces.
template <class M>
GrowthModel with_anchor(M m, std::optional<Anchor> anchor) {
  if (!anchor) return m;
  const auto given = m.C;
  m.C = std::nullopt;
  GrowthModel n = normalize(m, anchor->time, anchor->size);
  if (given && n.get_if<M>()->C != given) bad("C does not match the anchor t0, S0");
  return n;
}

GrowthModel from_flat(std::string_view kind, const Params& params) {
  if (kind.substr(0, kLogPrefix.size()) == kLogPrefix) {
    return log_wrap(from_flat(kind.substr(kLogPrefix.size()), params));
  }
  ParamReader r(params);
  auto done = [&r](GrowthModel m) {
    r.finish();
    return m;
  };
  if (kind == "exponential") {
    const double rate = r.need("r");
    return done(Exponential{rate, r.scale()});
  }
  if (kind == "linear_rate_time") {
    const double a = r.need("a"), b = r.need("b");
    return done(LinearRateTime{a, b, r.scale()});
  }
  if (kind == "poly_rate_time") {
    std::vector<double> coeffs;
    for (std::size_t k = 0;; ++k) {
      auto c = r.maybe("c" + std::to_string(k));
      if (!c) break;
      coeffs.push_back(*c);
    }
    auto scale = r.scale();
    return done(PolyRateTime{std::move(coeffs), scale});
  }
  if (kind == "hyperbolic") {
    const double b = r.need("b");
    return done(with_anchor(Hyperbolic{b, r.plain_c()}, r.anchor()));
  }
  if (kind == "linear_rate_size") {
    const double a = r.need("a"), b = r.need("b");
    return done(with_anchor(LinearRateSize{a, b, r.scale()}, r.anchor()));
  }
  if (kind == "hyperbolic_rate_time") {
    const double a = r.need("a"), b = r.need("b");
    return done(HyperbolicRateTime{a, b, r.scale()});
  }
  if (kind == "exp_rate_time") {
    const double a = r.need("a"), b = r.need("b");
    return done(ExpRateTime{a, b, r.scale()});
  }
  bad("unknown model kind '" + std::string(kind) + "'");
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) bad("not a number: '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string shortest_repr(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

ModelRecord to_record(const GrowthModel& m) {
  ModelRecord rec;
  const GrowthModel* cur = &m;
  while (const auto* w = cur->get_if<LogWrapped>()) {
    rec.kind += kLogPrefix;
    cur = w->inner.get();
  }
  rec.kind += kind_name(cur->kind());
  Params& p = rec.parameters;
  std::visit(
      [&p](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          p.emplace_back("r", v.r);
          push_scale(p, v.C);
        } else if constexpr (std::is_same_v<T, PolyRateTime>) {
          for (std::size_t k = 0; k < v.coeffs.size(); ++k) {
            p.emplace_back("c" + std::to_string(k), v.coeffs[k]);
          }
          push_scale(p, v.C);
        } else if constexpr (std::is_same_v<T, Hyperbolic>) {
          p.emplace_back("b", v.b);
          if (v.C) p.emplace_back("C", *v.C);
          push_anchor(p, v.anchor);
        } else if constexpr (std::is_same_v<T, LogWrapped>) {
          // unreachable: unwrapped above
        } else {
          p.emplace_back("a", v.a);
          p.emplace_back("b", v.b);
          push_scale(p, v.C);
          if constexpr (std::is_same_v<T, LinearRateSize>) push_anchor(p, v.anchor);
        }
      },
      cur->variant());
  return rec;
}

GrowthModel from_record(const ModelRecord& rec) {
  try {
    return from_flat(rec.kind, rec.parameters);
  } catch (const GrowthError& e) {
    if (e.code() == Errc::InvalidRecord) throw;
    bad(e.what());
  }
}

std::string format_record(const ModelRecord& rec) {
  std::string out = rec.kind;
  out += ':';
  bool first = true;
  for (const auto& [k, v] : rec.parameters) {
    if (!first) out += ',';
    first = false;
    out += k;
    out += '=';
    out += shortest_repr(v);
  }
  return out;
}

ModelRecord parse_record(std::string_view text) {
  // The kind may itself contain ':' (log:...), so split at the last one.
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) bad("expected 'kind:name=value,...'");
  ModelRecord rec;
  rec.kind = std::string(text.substr(0, colon));
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) bad("expected name=value, got '" + std::string(item) + "'");
    rec.parameters.emplace_back(std::string(item.substr(0, eq)), parse_double(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return rec;
}

}  // namespace growth
