#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meshkit/field.hpp"
#include "meshkit/quiver.hpp"

namespace meshkit {

// Brute-force reference implementations for the test suite. Deliberately
// shares no enumeration or elimination code with the main engine: backward
// path search, dense rational matrices, plain Gauss.

// Quotient dimension of degree-n paths x -> y modulo embedded mesh
// relations. Refuses instances with more than 200 paths.
int oracle_hom_dim(const TranslationQuiver& q, const VertexId& x,
                   const VertexId& y, int n);

// True iff the class of p vanishes.
bool oracle_class_is_zero(const TranslationQuiver& q, const Path& p);

struct OracleDepthResult {
  bool found = false;
  int total_degree = 0;
};

// Exhaustive substitution search mirroring depth_certificate's contract:
// positions, degrees 2..D per substituted position, total degree <= len + m.
// Returns the minimal total degree when a nonzero recomposition exists.
OracleDepthResult oracle_depth_search(const TranslationQuiver& q,
                                      const Path& p, int m, int d_cap);

}  // namespace meshkit
