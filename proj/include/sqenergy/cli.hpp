#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqenergy/bound.hpp"
#include "sqenergy/error.hpp"
#include "sqenergy/spectral.hpp"

namespace sqenergy::cli {

enum class Command { Compute, Certify, VerifyCert, Sweep, SplitCheck };
enum class OutputFormat { Json, Csv, Text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

struct CliConfig {
    Command command = Command::Compute;
    std::optional<std::string> graph6;
    std::optional<std::filesystem::path> file;
    std::optional<std::pair<std::size_t, std::size_t>> builtin;  // inclusive range
    std::optional<std::filesystem::path> cert_path;
    std::optional<std::string> parts;  // "0,1;2,3"
    std::optional<BoundTarget> bound;  // per-command default when empty
    Tolerances tol;
    std::size_t threads = 1;
    std::size_t top_k = 10;
    bool connected_only = true;
    bool timing = false;
    OutputFormat format = OutputFormat::Json;
    std::optional<std::filesystem::path> out;
};

// Parses argv. Help requests print to `out` and return nullopt; bad usage
// throws UsageError.
std::optional<CliConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

// Throws UsageError on inconsistent combinations.
void validate(const CliConfig& config);

// Runs one command, writing the report to config.out or `out` and
// diagnostics to `err`. Returns 0 / 1 / 2 (ok / check failed / usage or input error).
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run with exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "a..b" or "a".
std::pair<std::size_t, std::size_t> parse_range(const std::string& text);

// "0,1;2,3" -> {{0,1},{2,3}}.
std::vector<std::vector<std::size_t>> parse_parts(const std::string& text);

}  // namespace sqenergy::cli
