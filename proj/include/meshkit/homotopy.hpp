#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meshkit/quiver.hpp"

namespace meshkit {

// `generic` adds the identification of parallel arrows to the universal
// relation.
enum class HomotopyKind { universal, generic };

// One elementary homotopy move applied at a step position.
struct HomotopyMove {
  enum class Type {
    cancel_delete,   // drop steps pos, pos+1 (an arrow against its inverse)
    cancel_insert,   // insert arrow `a` out-and-back at pos (dir of first leg)
    mesh_swap,       // replace spoke pair (sigma a, a) by (sigma b, b) at pos
    parallel_swap,   // replace arrow a by parallel arrow b at pos
  };
  Type type;
  std::size_t pos = 0;
  ArrowId a;
  ArrowId b;
  Dir dir = Dir::forward;
};

Walk apply_move(const TranslationQuiver& q, const Walk& w,
                const HomotopyMove& m);

struct HomotopyAnswer {
  bool yes = false;  // false means "not identified within the bound"
  // For yes: the elementary-move chain from w1 to w2, replayable through
  // apply_move.
  std::vector<HomotopyMove> chain;
};

// Decides bounded homotopy of two walks with shared endpoints: breadth-first
// closure under the elementary moves, restricted to walks of length <= bound.
// A yes is sound; a no is only "no within the bound".
HomotopyAnswer walks_homotopic(const TranslationQuiver& q, const Walk& w1,
                               const Walk& w2, HomotopyKind kind, int bound);

}  // namespace meshkit
