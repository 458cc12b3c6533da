#pragma once

#include <string>

#include "sihdr/metrics.hpp"

namespace sihdr {

struct PipelineResult;

/// `key=value` lines, fixed six-decimal formatting, starting with a comment
/// line that names the luminance plane GMSD and entropy were measured on.
std::string format_report(const MetricReport& report);

/// Same fields as a JSON object (plus declined/reason when given a full result).
std::string report_to_json(const MetricReport& report);
std::string report_to_json(const PipelineResult& result);

} // namespace sihdr
