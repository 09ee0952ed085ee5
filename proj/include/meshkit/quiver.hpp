#pragma once

#include <map>
#include <string>
#include <vector>

#include "meshkit/errors.hpp"

namespace meshkit {

using VertexId = std::string;
using ArrowId = std::string;

struct VertexInfo {
  bool projective = false;
  bool injective = false;
  bool frontier = false;  // truncation boundary of an infinite quiver window
  friend bool operator==(const VertexInfo&, const VertexInfo&) = default;
};

struct Arrow {
  VertexId source;
  VertexId target;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// Translation quiver over opaque string ids. All orderings downstream are
// lexicographic on these ids. Immutable after freeze(); queries are safe for
// concurrent readers.
struct TranslationQuiver {
  std::string name;
  std::map<VertexId, VertexInfo> vertices;
  std::map<ArrowId, Arrow> arrows;
  std::map<VertexId, VertexId> tau;    // non-projective -> non-injective
  std::map<ArrowId, ArrowId> sigma;    // arrow into x -> arrow out of tau(x)

  // Derived indices, built by freeze().
  std::map<VertexId, std::vector<ArrowId>> out;  // sorted lex
  std::map<VertexId, std::vector<ArrowId>> in;   // sorted lex
  std::map<VertexId, VertexId> tau_inv;

  void freeze();

  bool has_vertex(const VertexId& v) const { return vertices.count(v) > 0; }
  bool has_arrow(const ArrowId& a) const { return arrows.count(a) > 0; }
  const VertexInfo& info(const VertexId& v) const;
  const Arrow& arrow(const ArrowId& a) const;
  const std::vector<ArrowId>& out_arrows(const VertexId& v) const;
  const std::vector<ArrowId>& in_arrows(const VertexId& v) const;
  // Empty string when undefined.
  VertexId tau_of(const VertexId& v) const;
  VertexId tau_inv_of(const VertexId& v) const;
  ArrowId sigma_of(const ArrowId& a) const;
};

enum class Dir { forward, inverse };

struct Step {
  ArrowId arrow;
  Dir dir;
  friend bool operator==(const Step&, const Step&) = default;
};

// Walk in traversal order: first step first. The inverse convention is
// s(a^-1) = e(a).
struct Walk {
  VertexId start;
  std::vector<Step> steps;
  friend bool operator==(const Walk&, const Walk&) = default;
};

// All-forward walk. Length 0 is the trivial path at `start`.
struct Path {
  VertexId start;
  std::vector<ArrowId> arrows;  // traversal order
  int length() const { return static_cast<int>(arrows.size()); }
  friend bool operator==(const Path&, const Path&) = default;
};

// Mesh ending at `end` (non-projective): every arrow into `end` paired with
// its sigma-partner out of `translate`.
struct Mesh {
  VertexId end;
  VertexId translate;
  std::vector<std::pair<ArrowId, ArrowId>> spokes;  // (alpha, sigma(alpha))
};

struct Violation {
  std::string code;
  std::string where;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;          // genuine axiom failures
  std::vector<Violation> frontier_warnings;   // excused at frontier vertices
  bool ok() const { return violations.empty(); }
};

// Checks walk composability; throws DomainError on a broken walk.
VertexId walk_end(const TranslationQuiver& q, const Walk& w);
bool walk_is_valid(const TranslationQuiver& q, const Walk& w);
Walk path_to_walk(const Path& p);
VertexId path_end(const TranslationQuiver& q, const Path& p);
// v_0 .. v_n along the path.
std::vector<VertexId> path_vertices(const TranslationQuiver& q, const Path& p);

ValidationReport validate(const TranslationQuiver& q);

// Errors if x is projective or frontier (mesh incomplete).
Mesh mesh_at(const TranslationQuiver& q, const VertexId& x);

// True iff vertex_i != tau(vertex_{i+2}) for every i. Errors when a needed
// tau is unknown at a frontier vertex.
bool is_sectional(const TranslationQuiver& q, const Path& p);

// All paths x -> y of length exactly n, lexicographic by arrow id sequence.
std::vector<Path> enumerate_paths(const TranslationQuiver& q, const VertexId& x,
                                  const VertexId& y, int n);

struct CollapseResult {
  TranslationQuiver quiver;
  std::map<ArrowId, int> multiplicity;  // collapsed arrow -> parallel count
};

// Gamma -> Gamma^v: parallel arrow classes become single arrows (named by
// the least member), tau unchanged, sigma induced.
CollapseResult collapse(const TranslationQuiver& q);

}  // namespace meshkit
