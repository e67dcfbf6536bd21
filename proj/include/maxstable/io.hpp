#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "maxstable/continuous.hpp"
#include "maxstable/maxar.hpp"
#include "maxstable/spectral.hpp"

namespace maxstable {

/// Formats with 17 significant digits, enough to round-trip any binary64.
std::string format_double(double v);

/// CSV with header `t,value`, one row per index.
void write_discrete_csv(std::ostream& out, const DiscretePath& path);
void write_discrete_csv(std::ostream& out, const WindowedPath& path);

/// Reads the `t,value` format. Indices must be consecutive; the result has
/// default params (a = 0) since the file does not carry them.
/// Throws std::invalid_argument with the offending line number.
WindowedPath read_discrete_csv(std::istream& in);

/// CSV with header `time,value,is_event`: the anchor row (is_event = 0)
/// followed by one row per event.
void write_cadlag_csv(std::ostream& out, const CadlagPath& path);

nlohmann::json cadlag_to_json(const CadlagPath& path);
CadlagPath cadlag_from_json(const nlohmann::json& j);

}  // namespace maxstable
