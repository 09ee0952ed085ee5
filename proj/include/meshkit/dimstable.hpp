#pragma once

#include <vector>

#include "meshkit/meshcat.hpp"

namespace meshkit {

template <class F>
struct DimsRow {
  VertexId x, y;
  std::vector<typename MeshEngine<F>::GradedDim> dims;  // degrees 0..max_deg
};

// Graded dimension table over all ordered vertex pairs. The parallel variant
// sweeps pairs with OpenMP against the shared memo table; the serial variant
// is the reference the tests and the benchmark compare against.
template <class F>
std::vector<DimsRow<F>> dims_table_serial(const TranslationQuiver& q,
                                          int max_deg) {
  MeshEngine<F> eng(q);
  std::vector<DimsRow<F>> rows;
  for (auto& [x, xi] : q.vertices)
    for (auto& [y, yi] : q.vertices)
      rows.push_back({x, y, eng.graded_dims(x, y, max_deg)});
  return rows;
}

template <class F>
std::vector<DimsRow<F>> dims_table_parallel(const TranslationQuiver& q,
                                            int max_deg) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (auto& [x, xi] : q.vertices)
    for (auto& [y, yi] : q.vertices) pairs.push_back({x, y});
  std::vector<DimsRow<F>> rows(pairs.size());
  MeshEngine<F> eng(q);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(pairs.size()); ++i) {
    rows[i] = {pairs[i].first, pairs[i].second,
               eng.graded_dims(pairs[i].first, pairs[i].second, max_deg)};
  }
  return rows;
}

template <class F>
std::vector<DimsRow<F>> dims_table(const TranslationQuiver& q, int max_deg,
                                   bool parallel) {
  return parallel ? dims_table_parallel<F>(q, max_deg)
                  : dims_table_serial<F>(q, max_deg);
}

}  // namespace meshkit
