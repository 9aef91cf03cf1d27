#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tfmst::cli {

/// Version of the JSON report layout; bumped on any shape change and
/// mirrored by report.schema.json.
constexpr int kReportSchemaVersion = 1;

/// Exit codes of the tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFindings = 1,  // the report contains error-severity findings
  kExitUsage = 2,     // bad arguments or unreadable input
};

/// Runs one `tfmst` invocation. `args` excludes the program name. The
/// report goes to `out`, usage problems and I/O failures to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tfmst::cli
