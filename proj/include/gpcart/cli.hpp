#pragma once

#include "gpcart/graph.hpp"
#include "json.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gpcart::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

class SetSyntaxError : public std::invalid_argument {
public:
    SetSyntaxError(const std::string& message, std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Parses "(0,1);(1,4)". Whitespace is ignored; a bare integer "3" is a
/// one-coordinate tuple; the empty string is the empty set.
std::vector<VertexCoord> parse_set_literal(std::string_view text);

/// Human-readable rendering of a command's `result` object. The text output
/// of every subcommand is produced by this function from the same JSON that
/// --json prints.
std::string render_human(const std::string& command, const nlohmann::ordered_json& result);

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpcart::cli
