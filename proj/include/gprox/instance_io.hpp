#pragma once

#include <iosfwd>
#include <string>

#include "gprox/instances.hpp"

namespace gprox {

/// Writes the text instance format described in docs/instance-format.md.
/// Tabulated instances round-trip bit-exactly; coordinate instances are
/// stored as an example name plus its parameters. Throws DomainError for
/// graphs or maps that have no textual form (arbitrary predicates or rules).
void write_instance(const Instance& inst, std::ostream& out);

/// Throws ParseError carrying the 1-based line and the field name.
Instance read_instance(std::istream& in);

void save_instance(const Instance& inst, const std::string& path);
/// A missing or unreadable file is a ParseError at line 0, field "file".
Instance load_instance(const std::string& path);

} // namespace gprox
