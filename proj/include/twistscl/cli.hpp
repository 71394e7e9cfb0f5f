#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistscl/bounds.hpp"

namespace twistscl::cli {

enum class Command { bound, table, verify_homology, verify_lemma8, verify_identity, replay };
enum class Format { text, csv, json };

struct IntRange {
  int lo = 0;
  int hi = 0;
  bool single() const { return lo == hi; }
  /// "7" or "2..10".
  static IntRange parse(const std::string& text);
};

struct RunConfig {
  Command command = Command::bound;
  std::optional<IntRange> g;
  std::optional<HSelection> h;
  std::optional<IntRange> n;
  Format format = Format::text;
  int precision = 8;
  unsigned threads = 1;
  std::string out_path;
};

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

/// Thrown for parameter combinations rejected before any computation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Validates ranges, then runs one command. Writes data to `out` only.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistscl::cli
