#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gslep {

/// Shortest round-trip decimal form of a double (printf %.17g).
std::string format_g17(double value);

/// Write `content` to `path` atomically: the data goes to a temporary file in
/// the same directory which is then renamed over the target, so readers never
/// observe a partially written file.
void write_text_atomic(const std::filesystem::path &path,
                       std::string_view content);

/// Read a text file and return its data lines as (line_number, text) pairs.
/// Blank lines are dropped and everything from a '#' to the end of the line is
/// treated as a comment. Line numbers are 1-based positions in the file.
std::vector<std::pair<int, std::string>>
read_data_lines(const std::filesystem::path &path);

/// Split a line on commas or whitespace, dropping empty tokens.
std::vector<std::string> split_fields(const std::string &line);

/// Strict numeric parsing helpers. `context` should identify the file and
/// line so the resulting message points at the offending input.
int parse_int(const std::string &token, const std::string &context);
double parse_double(const std::string &token, const std::string &context);

} // namespace gslep
