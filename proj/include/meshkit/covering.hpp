#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meshkit/homotopy.hpp"
#include "meshkit/quiver.hpp"

namespace meshkit {

// Truncated covering of a base translation quiver: the window `delta`
// together with the projection pi and stability metadata. Vertices of delta
// are homotopy classes of walks from the basepoint of the base quiver,
// truncated at `radius`; classes whose shortest representative has length
// `radius` are flagged frontier. Immutable once built.
struct CoveringBall {
  TranslationQuiver delta;
  VertexId basepoint;  // delta vertex over the chosen base vertex
  int radius = 0;
  int slack = 0;
  HomotopyKind kind = HomotopyKind::universal;
  std::map<VertexId, VertexId> pi_vertex;
  std::map<ArrowId, ArrowId> pi_arrow;
  bool stable = false;
  // Canonical representative walk (in the base) for each delta vertex:
  // lexicographically least among shortest walks.
  std::map<VertexId, Walk> repr;
};

// Builds the radius-r ball of the universal or generic covering around
// `base`, using congruence closure bounded at length r + slack. slack < 0
// selects the default 2*r. The stable flag records whether rerunning with
// slack + 2 changes any identification inside the ball.
CoveringBall build_covering_ball(const TranslationQuiver& q,
                                 const VertexId& base, int radius,
                                 HomotopyKind kind, int slack = -1);

// Covering axioms on the non-frontier part: flags match through pi, pi
// commutes with tau, pi restricts to local arrow bijections.
ValidationReport check_covering(const CoveringBall& ball,
                                const TranslationQuiver& q);

// Unique lift of a base path starting at startLift. Throws DomainError when
// pi(startLift) is not the path start, OutOfWindowError when the lift leaves
// the ball.
Path lift_path(const CoveringBall& ball, const Path& base_path,
               const VertexId& start_lift);

// Lift of a base walk (both step directions); same error contract.
Walk lift_walk(const CoveringBall& ball, const Walk& base_walk,
               const VertexId& start_lift);

// Basepoint-preserving isomorphism of the non-frontier parts, searched by
// label-driven simultaneous BFS (labels are the base arrows under pi). Both
// balls must live over the same base quiver.
bool ball_isomorphic(const CoveringBall& b1, const CoveringBall& b2);

// Collapses parallel arrows of both the ball and its base, yielding a ball
// over collapse(base). Used for the covering/collapse exchange identity.
CoveringBall collapse_ball(const CoveringBall& ball);

}  // namespace meshkit
