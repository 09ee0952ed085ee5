// Benchmark: graded dimension sweep over all vertex pairs, serial reference
// vs the OpenMP pair-parallel variant. Checks that both produce identical
// tables before reporting timings.
#include <chrono>
#include <cstdio>

#include "meshkit/dimstable.hpp"
#include "meshkit/field.hpp"
#include "meshkit/generators.hpp"

using namespace meshkit;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <class F>
bool same_table(const std::vector<DimsRow<F>>& a,
                const std::vector<DimsRow<F>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
    if (a[i].dims.size() != b[i].dims.size()) return false;
    for (std::size_t d = 0; d < a[i].dims.size(); ++d)
      if (a[i].dims[d].dim != b[i].dims[d].dim ||
          a[i].dims[d].exact != b[i].dims[d].exact)
        return false;
  }
  return true;
}

void run_case(const char* label, const TranslationQuiver& q, int max_deg) {
  auto t0 = std::chrono::steady_clock::now();
  auto serial = dims_table_serial<Rational>(q, max_deg);
  double ts = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto par = dims_table_parallel<Rational>(q, max_deg);
  double tp = seconds_since(t0);

  if (!same_table(serial, par)) {
    std::printf("%-18s MISMATCH between serial and parallel tables\n", label);
    std::exit(1);
  }
  std::printf("%-18s pairs=%4zu deg<=%d  serial %.3fs  parallel %.3fs  x%.2f\n",
              label, serial.size(), max_deg, ts, tp, ts / (tp > 0 ? tp : 1e-9));
}

}  // namespace

int main() {
  run_case("triangle_a6", gen_triangle_an(6), 6);
  run_case("tube(3,8)", gen_tube(3, 8), 6);
  run_case("ztree_a3[-4,5]", gen_ztree(TreeSpec::line(3), -4, 5), 5);
  return 0;
}
