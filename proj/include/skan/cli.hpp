#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace skan::cli {

using Json = nlohmann::ordered_json;

struct Outcome {
  int exit = 0;  // 0 pass, 1 check failure, 2 usage or parse error
  Json report;
};

/// Runs one command (arguments without the program name). Relative paths,
/// including --out and --report, resolve against `base`. A human summary goes
/// to `out` and diagnostics to `err` when given.
Outcome run_command(const std::vector<std::string>& args, const std::filesystem::path& base = ".",
                    std::ostream* out = nullptr, std::ostream* err = nullptr);

/// Copy of a report with every "timing" member removed, recursively.
Json without_timing(Json j);

/// Display form of a report value, as compared by suite expectations.
std::string render(const Json& v);

int main(int argc, char** argv);

}  // namespace skan::cli
