#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "qgt/geometric_tensor.hpp"
#include "qgt/spectral_oracle.hpp"

namespace qgt {

using Json = nlohmann::ordered_json;

inline constexpr int kRecordVersion = 1;

/// [{num, den, alpha_half_pow, lambda_pow, j_pow}, ...] in canonical order.
Json series_to_json(const ScalarSeries& s);
ScalarSeries series_from_json(const Json& j);

/// Self-describing output of `compute`: metric entries as exact series,
/// numeric values when a point is given, determinant and critical coupling.
Json qgt_record(const QGTResult& result, const std::optional<ParameterPoint>& point);

/// Human-readable table of the same record.
std::string record_text(const Json& record);

}  // namespace qgt
