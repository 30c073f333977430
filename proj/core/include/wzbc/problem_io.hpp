#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wzbc/problem.hpp"

namespace wzbc {

/// Parses a problem document:
///   {"kind":"gaussian","P":1,"W":[1,0.5],"N":[0.8,0.4],"kappa":"1"}
///   {"kind":"binary","p":[0.05,0.1],"beta":[0.2,0.1],"kappa":"1/2"}
/// kappa may be an integer or a "num/den" string; it defaults to 1.
/// The result is validated. Malformed documents throw ProblemError.
Problem parse_problem(std::string_view json_text);
Problem load_problem(const std::filesystem::path& path);

std::string to_json(const Problem& problem);

} // namespace wzbc
