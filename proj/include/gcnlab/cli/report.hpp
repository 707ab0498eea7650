#pragma once

// JSON report assembly. Keys are emitted in sorted order and floats in their
// shortest round-trip form, so a parsed report re-serializes byte-identically.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "gcnlab/bounds.hpp"
#include "gcnlab/concentration.hpp"
#include "gcnlab/linalg.hpp"
#include "gcnlab/separation.hpp"

namespace gcnlab::cli {

inline constexpr const char* kLibraryVersion = "0.1.0";

using Json = nlohmann::json;

Json to_json(const Vector& v);
Json to_json(const Matrix& m);  ///< array of columns
Json to_json(const SeparationCertificate& cert);
Json to_json(const BoundReport& report);
Json to_json(const ConcentrationSummary& summary);

Json make_report(const std::string& command, Json inputs, Json outputs,
                 double runtime_ms, std::optional<std::uint64_t> seed);

std::string serialize(const Json& report);

}  // namespace gcnlab::cli
