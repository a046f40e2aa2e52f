#ifndef PROXYSHAP_CSV_HPP
#define PROXYSHAP_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "proxyshap/coalition.hpp"
#include "proxyshap/game.hpp"

namespace proxyshap {

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view content);

/// Shortest "%.*g" rendering with the given significant digits; negative
/// zero prints as 0 and infinities as inf / -inf.
std::string format_number(double x, int precision = 12);

/// Rows of `coalition,value` (a `subset,value` header is accepted too).
/// All coalitions must share one width.
std::vector<LabeledCoalition> parse_coalition_values(std::string_view text);
std::vector<LabeledCoalition> read_coalition_values(const std::filesystem::path& path);
std::string coalition_values_to_csv(const std::vector<LabeledCoalition>& rows);

/// One 0/1 string per line; blank lines and lines starting with '#' are skipped.
std::vector<Coalition> parse_targets(std::string_view text, std::size_t n);
std::vector<Coalition> read_targets(const std::filesystem::path& path, std::size_t n);

/// Comma-separated numeric rows; a non-numeric first row is taken as a header.
std::vector<std::vector<double>> read_numeric_rows(const std::filesystem::path& path);

}  // namespace proxyshap

#endif  // PROXYSHAP_CSV_HPP
