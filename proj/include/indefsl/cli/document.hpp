#pragma once

// JSON encodings of results. Complex numbers are {"re": .., "im": ..};
// non-finite reals are the strings "inf", "-inf", "nan".

#include <complex>
#include <string>

#include <json.hpp>

#include "indefsl/classify.hpp"
#include "indefsl/construction.hpp"
#include "indefsl/spectrum.hpp"
#include "indefsl/weyl.hpp"

namespace indefsl::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* tool_name = "indefsl";
inline constexpr const char* tool_version = "0.1.0";

[[nodiscard]] Json real_json(double v);
[[nodiscard]] double json_real(const Json& j);
[[nodiscard]] Json complex_json(std::complex<double> z);
[[nodiscard]] std::complex<double> json_complex(const Json& j);

[[nodiscard]] Json to_json(const weyl::MValue& m);
[[nodiscard]] Json to_json(const spectrum::EigenvalueSet& s);
[[nodiscard]] Json to_json(const sets::ExtendedRealSet& s);
[[nodiscard]] Json to_json(const sets::SpectralSet& s);
[[nodiscard]] Json to_json(const classify::HalfLineSpectrumModel& m);
[[nodiscard]] Json to_json(const classify::DefinitizabilityReport& r);
[[nodiscard]] Json to_json(const construction::StepDensityMeasure& m);
[[nodiscard]] Json to_json(const construction::ZeroSequence& z);
[[nodiscard]] Json to_json(const construction::Certificate& c);

[[nodiscard]] sets::ExtendedRealSet extended_set_from_json(const Json& j);

/// Envelope shared by every command.
[[nodiscard]] Json make_document(const std::string& command, Json inputs, Json tolerances, Json outputs);

/// Pretty-printed with a trailing newline.
[[nodiscard]] std::string serialize(const Json& doc);

}  // namespace indefsl::cli
