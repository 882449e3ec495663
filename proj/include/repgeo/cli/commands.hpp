#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "repgeo/field.hpp"

namespace repgeo::cli {

enum class OutputFormat { text, records };

/// Flags shared by the subcommands.
struct SessionConfig {
    std::optional<Field> field;
    std::uint64_t max_points = 1'000'000;
    std::size_t max_group = 5000;
    std::size_t max_len = 2;
    std::size_t max_premises = 2;
    std::uint64_t budget = 200'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::optional<std::size_t> nx;
    std::optional<std::size_t> ny;
    OutputFormat format = OutputFormat::text;
};

/// `q`/`Q` or a prime. Throws AlgebraError.
Field parse_field(const std::string& text);

/// Default point budget: REPGEO_MAX_POINTS when set and positive, else 1'000'000.
std::uint64_t default_max_points();

/// Runs one subcommand. args excludes the program name.
/// Exit codes: 0 true/success, 1 false/witness found, 2 usage or budget error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace repgeo::cli
