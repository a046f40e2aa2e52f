#ifndef PROXYSHAP_TOOLS_CLI_HPP
#define PROXYSHAP_TOOLS_CLI_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "proxyshap/game.hpp"

namespace proxyshap::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Builds a game from a `kind:detail` spec:
///   constant:c (needs n), unanimity:0110, moebius:path.csv, table:path.csv,
///   tree:model.json, interventional:model.json,x.csv,background.csv,
///   random:n,terms,max_order,seed
GamePtr make_game(std::string_view spec, std::optional<std::size_t> n, std::size_t background_limit = 50);

/// Full command-line entry point; returns the process exit code
/// (0 success, 1 I/O or parse failure, 2 capacity or precondition failure).
int run_cli(int argc, const char* const* argv);

}  // namespace proxyshap::cli

#endif  // PROXYSHAP_TOOLS_CLI_HPP
