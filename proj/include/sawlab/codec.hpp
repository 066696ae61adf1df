#pragma once

#include <string>
#include <string_view>

#include "sawlab/lattice.hpp"

namespace sawlab {

class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `d=<int>;origin=<c1,...,cd>;steps=<tokens>`. Tokens are either a
/// run of E/W/N/S letters (d = 2 only) or comma-separated signed axis indices
/// such as `+1,-2`. An empty token list is the zero-length walk.
Walk parse_walk(std::string_view text);

/// Canonical text: letters for d = 2, signed indices otherwise.
std::string serialize_walk(const Walk& w);

/// Step string only (letters for d = 2, signed indices otherwise).
std::string step_tokens(const Walk& w);

}  // namespace sawlab
