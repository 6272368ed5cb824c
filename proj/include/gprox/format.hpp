#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gprox {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_exact(double value);

/// Fixed-significance text for human-readable reports (deterministic).
std::string format_number(double value, int significant = 12);

std::optional<double> parse_double(std::string_view text);
std::optional<unsigned long long> parse_unsigned(std::string_view text);

} // namespace gprox
