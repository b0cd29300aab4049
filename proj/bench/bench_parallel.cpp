// Serial vs OpenMP timings for the brute-force oracle and the what-if probes.
//
//   pconf_bench [instance.lp] [repeats]
//
// Without an instance a synthetic one is generated that fills most of the
// oracle cap.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <omp.h>

#include "pconf/model.hpp"
#include "pconf/oracle.hpp"
#include "pconf/solver.hpp"

using namespace pconf;

namespace {

std::string synthetic() {
  // Five components with a 3-valued type and size cell each (16^5 cells)
  // plus one propertyless component: about 4.2 million candidates.
  std::ostringstream src;
  for (int c = 0; c < 6; ++c) {
    for (int t = 0; t < 3; ++t) src << "domain(c" << c << ",type," << (c < 5 ? "t" : "u") << t << ").\n";
  }
  for (int t = 0; t < 3; ++t) src << "property_val(t" << t << ",size," << t + 1 << ").\n";
  for (int c = 0; c + 1 < 6; c += 2) src << "incompatible_com_com(c" << c << ",c" << c + 1 << ").\n";
  src << "require_pv_pv((c0,size,1),(c2,size,2)).\n";
  return src.str();
}

template <typename Fn>
double best_of(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::string source = synthetic();
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::fprintf(stderr, "cannot read %s\n", argv[1]);
      return 2;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    source = ss.str();
  }
  const int repeats = argc > 2 ? std::max(1, std::atoi(argv[2])) : 3;

  auto loaded = load_instance(source);
  if (!loaded.ok()) {
    std::fprintf(stderr, "instance has errors\n");
    return 3;
  }
  const auto& problem = *loaded.problem;
  std::printf("threads %d, components %zu, oracle space %llu\n", omp_get_max_threads(), problem.components().size(),
              static_cast<unsigned long long>(problem.oracle_space()));

  std::size_t serial_count = 0;
  std::size_t parallel_count = 0;
  const double os = best_of(repeats, [&] { serial_count = brute_force_solve_serial(problem).solutions.size(); });
  const double op = best_of(repeats, [&] { parallel_count = brute_force_solve(problem).solutions.size(); });
  std::printf("oracle   serial %8.3f s  parallel %8.3f s  speedup %5.2fx  solutions %zu/%zu\n", os, op, os / op,
              serial_count, parallel_count);

  SolveOptions options;
  const Term component = *problem.components().begin();
  std::size_t ws_values = 0;
  std::size_t wp_values = 0;
  const double ws = best_of(repeats, [&] {
    ws_values = consistent_values_serial(problem, options, component, sym("type")).values.size();
  });
  const double wp = best_of(repeats, [&] {
    wp_values = consistent_values(problem, options, component, sym("type")).values.size();
  });
  std::printf("whatif   serial %8.3f s  parallel %8.3f s  speedup %5.2fx  values %zu/%zu\n", ws, wp, ws / wp,
              ws_values, wp_values);
  return serial_count == parallel_count && ws_values == wp_values ? 0 : 1;
}
