#pragma once

#include <string>

#include "olct/recovery.hpp"
#include "olct/stolct.hpp"
#include "olct/transforms.hpp"
#include "olct/types.hpp"

namespace olct {

/// Signal wire format: {"origin": int, "step": real, "re": [...], "im": [...]}.
/// Serialization and parsing both reject non-finite values (InvalidSpec), as
/// does every other parser below on malformed input or wrong shapes.
std::string signal_to_json(const SampledSignal& f);
SampledSignal signal_from_json(const std::string& text);

/// {"grid": {"start","step","count"}, "re": [...], "im": [...]}
std::string spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const std::string& text);

/// {"shift_grid": {...}, "freq_grid": {...}, "window_id": str,
///  "re": [...], "im": [...]} with row-major values, one row per shift.
std::string map_to_json(const TimeFrequencyMap& m);
TimeFrequencyMap map_from_json(const std::string& text);

/// {"residual": real, "verdict": str (omitted when empty),
///  "diagnostics": {name: real}, "signal": signal wire format}
std::string report_to_json(const RecoveryReport& r);
RecoveryReport report_from_json(const std::string& text);

std::string read_text_file(const std::string& path);  // InvalidSpec when unreadable
void write_text_file(const std::string& path, const std::string& text);

}  // namespace olct
