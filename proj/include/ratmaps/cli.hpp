#pragma once

// Command-line front end. run() is the whole program minus argv handling so
// tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ratmaps::cli {

enum ExitCode : int { kOk = 0, kCertificationFailure = 1, kInvalidInput = 2 };

/// RATMAPS_SEED when set (decimal or 0x-prefixed hex), else kDefaultSeed.
/// Throws std::invalid_argument on an unparsable value.
std::uint64_t default_seed();

/// args excludes the program name. Reports go to --out when given, else to
/// `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Envelope shared by every report.
nlohmann::json make_report(const std::string& command, const nlohmann::json& config, std::uint64_t seed,
                           nlohmann::json result);

}  // namespace ratmaps::cli
