#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "growth/models.hpp"

namespace growth {

/// Flat, serializable description of a GrowthModel.
///
/// `kind` is the variant tag (`exponential`, `linear_rate_time`,
/// `poly_rate_time`, `hyperbolic`, `linear_rate_size`,
/// `hyperbolic_rate_time`, `exp_rate_time`), prefixed with `log:` once per
/// LogWrapped layer. Parameter names per kind:
///
///   exponential            r
///   linear_rate_time       a b
///   poly_rate_time         c0 c1 ... (coefficients of f(t), ascending)
///   hyperbolic             b
///   linear_rate_size       a b
///   hyperbolic_rate_time   a b
///   exp_rate_time          a b
///
/// followed by the normalization constant when set: `C` (omitted when not
/// representable as a double), plus `ln_abs_C` for the multiplicative
/// kinds and `sign_C` when `C` is omitted. Normalized `hyperbolic` and
/// `linear_rate_size` models also carry their anchor datum as `t0`, `S0`.
/// Records round-trip bit-exactly.
struct ModelRecord {
  std::string kind;
  std::vector<std::pair<std::string, double>> parameters;

  friend bool operator==(const ModelRecord&, const ModelRecord&) = default;
};

ModelRecord to_record(const GrowthModel& m);
GrowthModel from_record(const ModelRecord& rec);

/// Single-line text form `kind:name=value,name=value`. Numbers use the
/// shortest representation that round-trips; parsing is locale-free.
std::string format_record(const ModelRecord& rec);
ModelRecord parse_record(std::string_view text);

/// Shortest round-trip decimal representation of a double.
std::string shortest_repr(double x);

}  // namespace growth
