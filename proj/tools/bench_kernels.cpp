// Timings for the kernels with serial and parallel paths: class structure
// constants, seeded algorithm sweeps, and the shot sampler.  Parallel runs
// use OpenMP threads; on a single-core build the two columns should match.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "hyperstab/catalog.h"
#include "hyperstab/circuit.h"
#include "hyperstab/group.h"
#include "hyperstab/hshp.h"

using namespace hyperstab;

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const std::string& kernel, const std::string& workload, double serial_ms,
         double parallel_ms) {
  std::printf("%-18s %-28s %10.2f %10.2f %8.2fx\n", kernel.c_str(), workload.c_str(),
              serial_ms, parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel timings: serial reference vs parallel path"};
  int jobs =
#ifdef _OPENMP
      omp_get_max_threads();
#else
      1;
#endif
  int reps = 3;
  app.add_option("--jobs", jobs, "threads for the parallel columns");
  app.add_option("--reps", reps, "repetitions per measurement (best is kept)");
  CLI11_PARSE(app, argc, argv);

  std::printf("jobs %d, best of %d runs, times in ms\n\n", jobs, reps);
  std::printf("%-18s %-28s %10s %10s %9s\n", "kernel", "workload", "serial", "parallel",
              "speedup");

  // Class structure constants: the (C,E)-loop kernel.
  for (const char* name : {"s4", "d16", "d32", "heisenberg5", "heisenberg7"}) {
    const FiniteGroup& G = catalog_group(name);
    ConjugacyPartition P = conjugacy_partition(G);
    double serial = time_ms(reps, [&] { class_constants_serial(G, P); });
#ifdef _OPENMP
    omp_set_num_threads(jobs);
#endif
    double parallel = time_ms(reps, [&] { class_constants_parallel(G, P); });
#ifdef _OPENMP
    omp_set_num_threads(omp_get_max_threads());
#endif
    char workload[64];
    std::snprintf(workload, sizeof workload, "%s |G|=%d classes=%d", name, G.order,
                  int(P.classes.size()));
    row("class-constants", workload, serial, parallel);
  }

  // Seeded sweeps: independent full-space sampling runs.
  {
    const HypergroupTable& T = catalog_hypergroup("conj-heisenberg3");
    const CharacterTable& C = catalog_characters("conj-heisenberg3");
    auto one = [&](uint64_t s) {
      return akr_run(T, C, [](int c) { return c; }, 20, s);
    };
    const int runs = 16;
    double serial = time_ms(reps, [&] { seeded_sweep(runs, 1, 1, one); });
    double parallel = time_ms(reps, [&] { seeded_sweep(runs, 1, jobs, one); });
    row("seeded-sweep", "akr conj-heisenberg3 x16", serial, parallel);
  }

  // Shot sampler over a two-register transform circuit.
  {
    Register r;
    r.table = &catalog_hypergroup("z12");
    r.chars = &catalog_characters("z12");
    Circuit c;
    c.regs = {r, r};
    c.initial_tags = {Side::Elem, Side::Elem};
    c.gates = {gate_qft(), gate_px(0, 5), gate_pz(1, 3), gate_qft()};
    const long long shots = 200000;
    double serial = time_ms(reps, [&] { sample_outcomes(c, {1, 7}, shots, 9, 1); });
    double parallel = time_ms(reps, [&] { sample_outcomes(c, {1, 7}, shots, 9, jobs); });
    row("shot-sampler", "z12^2 circuit, 2e5 shots", serial, parallel);
  }

  return 0;
}
