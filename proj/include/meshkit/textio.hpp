#pragma once

#include <iosfwd>
#include <string>

#include "meshkit/covering.hpp"
#include "meshkit/quiver.hpp"

namespace meshkit {

// Line-oriented quiver format, UTF-8, '#' comments:
//   quiver <name>
//   vertex <id> [proj] [inj] [frontier]
//   arrow <id> : <src> -> <tgt>
//   tau <x> -> <y>
//   sigma <arrow> -> <arrow>
// The emitter is the exact inverse of the parser up to whitespace
// normalization. Duplicate ids and dangling references are parse errors;
// semantic problems are left to validate().
TranslationQuiver parse_quiver(const std::string& text);
TranslationQuiver parse_quiver_file(const std::string& path);
std::string emit_quiver(const TranslationQuiver& q);

// Covering ball file: the delta quiver in the format above followed by
//   basepoint <v> / radius <r> / slack <s> / kind <universal|generic> /
//   stable <true|false> / pi <delta-vertex> -> <base-vertex> /
//   pi-arrow <delta-arrow> -> <base-arrow>
CoveringBall parse_covering(const std::string& text);
CoveringBall parse_covering_file(const std::string& path);
std::string emit_covering(const CoveringBall& ball);

}  // namespace meshkit
