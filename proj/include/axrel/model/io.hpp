#pragma once

// Model description files (JSON). Field values are literal strings such as
// "3/5" or "sqrt(2)/2"; see docs/model-format.md for the schema.

#include "axrel/model/structure.hpp"

#include <string>
#include <string_view>

namespace axrel {

/// Throws FormatError (bad structure) or LiteralError (bad field literal).
Structure parse_model(std::string_view json_text);
Structure load_model(const std::string& path);

/// Canonical JSON; parse_model(print_model(s)) prints identically. Throws
/// FormatError for numeric worldlines, which have no textual form.
std::string print_model(const Structure& s);

/// A single worldline object in the model-file form, as JSON text.
Worldline parse_worldline(std::string_view json_text);
std::string print_worldline(const Worldline& w);

}  // namespace axrel
