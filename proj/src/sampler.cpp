// Classical simulation of final-basis measurements.  The circuit is reduced
// to its normal form; the transform layer turns a basis-state input into a
// product of per-register weight distributions, and the monomial layer moves
// outcomes around by an index remap.  Phases never reach the measurement.

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hyperstab/circuit.h"

namespace hyperstab {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SamplerPlan {
  std::vector<int> sizes;
  std::vector<Side> tags;
  std::vector<std::vector<double>> q;  // per-register pre-remap distribution
  std::vector<int> remap;              // outcome index after the monomial layer
  long long dim = 0;
};

SamplerPlan make_plan(const Circuit& c, const std::vector<int>& input, int cap) {
  if (c.regs.empty() || c.initial_tags.size() != c.regs.size())
    throw Error{"Malformed", "circuit: register and tag counts do not match"};
  if (input.size() != c.regs.size())
    throw Error{"Malformed", "input needs one basis label per register"};
  SamplerPlan pl;
  pl.dim = 1;
  for (size_t i = 0; i < c.regs.size(); ++i) {
    int n = c.regs[i].table->size;
    if (input[i] < 0 || input[i] >= n) throw Error{"Malformed", "input label out of range"};
    pl.sizes.push_back(n);
    pl.dim *= n;
    if (pl.dim > cap) throw Error{"CapExceeded", "outcome space dimension exceeds the cap"};
  }

  // Trailing diagonal gates are unitary phase layers; they cannot move
  // final-basis probability, so drop them before normalizing.
  Circuit core = c;
  while (!core.gates.empty() && (core.gates.back().kind == CGate::Quadratic ||
                                 core.gates.back().kind == CGate::PauliZ))
    core.gates.pop_back();
  NormalForm nf = normal_form(core);
  pl.tags = nf.final_tags;

  pl.q.resize(c.regs.size());
  for (size_t i = 0; i < c.regs.size(); ++i) {
    int n = pl.sizes[i];
    if (!nf.has_qft) {
      pl.q[i].assign(n, 0.0);
      pl.q[i][input[i]] = 1.0;
      continue;
    }
    // One transform applied to |x>: outcome d with probability proportional
    // to w_d w_x |X_d(x)|^2, both weights read against the initial tag.
    const Register& r = c.regs[i];
    Side tag = c.initial_tags[i];
    int x = input[i];
    std::vector<double> qi(n);
    double tot = 0;
    for (int d = 0; d < n; ++d) {
      double wd = tag == Side::Elem ? r.chars->char_weight[d] : r.table->weight[d];
      double wx = tag == Side::Elem ? r.table->weight[x] : r.chars->char_weight[x];
      complex v = tag == Side::Elem ? r.chars->chi[d][x] : r.chars->chi[x][d];
      qi[d] = wd * wx * std::norm(v);
      tot += qi[d];
    }
    for (double& p : qi) p /= tot;
    pl.q[i] = std::move(qi);
  }

  // Compose the permutation with the invertible shifts, last Pauli first.
  ProductSpace fin;
  build_product_space(c, nf.final_tags, &fin);
  pl.remap.resize(pl.dim);
  for (int z = 0; z < int(pl.dim); ++z) {
    int y = nf.perm[z];
    for (size_t k = nf.paulis.size(); k-- > 0;) {
      const PauliTerm& t = nf.paulis[k];
      if (t.kind != PKind::X) continue;
      auto pr = fin.table.pairs(t.param, y);
      if (pr.size() != 1)
        throw Error{"Unsupported", "non-invertible shift in the sampling layer"};
      y = pr[0].c;
    }
    pl.remap[z] = y;
  }
  return pl;
}

}  // namespace

std::vector<double> outcome_distribution(const Circuit& c, const std::vector<int>& input,
                                         int cap) {
  SamplerPlan pl = make_plan(c, input, cap);
  std::vector<double> dist(pl.dim, 0.0);
  for (int z = 0; z < int(pl.dim); ++z) {
    std::vector<int> tup = product_tuple(pl.sizes, z);
    double p = 1;
    for (size_t i = 0; i < pl.sizes.size(); ++i) p *= pl.q[i][tup[i]];
    if (p > 0) dist[pl.remap[z]] += p;
  }
  return dist;
}

ShotCounts sample_outcomes(const Circuit& c, const std::vector<int>& input, long long shots,
                           uint64_t seed, int jobs) {
  if (shots < 0) throw Error{"Malformed", "negative shot count"};
  SamplerPlan pl = make_plan(c, input, 4096);
  if (jobs < 1) jobs = 1;
  const int R = int(pl.sizes.size());
  const long long N = pl.dim;

  std::vector<std::vector<double>> cdf(R);
  for (int i = 0; i < R; ++i) {
    cdf[i].resize(pl.sizes[i]);
    double run = 0;
    for (int d = 0; d < pl.sizes[i]; ++d) {
      run += pl.q[i][d];
      cdf[i][d] = run;
    }
    cdf[i].back() = 1.0;
  }

  // Fixed work split and per-worker seeds keep results identical for a given
  // (seed, jobs) no matter how many threads actually run.
  std::vector<std::vector<long long>> wc(jobs, std::vector<long long>(N, 0));
#pragma omp parallel for schedule(static) if (jobs > 1)
  for (int w = 0; w < jobs; ++w) {
    long long mine = shots / jobs + (w < shots % jobs ? 1 : 0);
    std::mt19937_64 rng(splitmix64(seed + 0x9e3779b97f4a7c15ULL * uint64_t(w)));
    std::vector<long long>& local = wc[w];
    std::vector<int> tup(R);
    for (long long t = 0; t < mine; ++t) {
      for (int i = 0; i < R; ++i) {
        double u = double(rng() >> 11) * 0x1.0p-53;
        int k = int(std::upper_bound(cdf[i].begin(), cdf[i].end(), u) - cdf[i].begin());
        tup[i] = std::min(k, pl.sizes[i] - 1);
      }
      local[pl.remap[product_index(pl.sizes, tup)]]++;
    }
  }

  ShotCounts out;
  out.tags = pl.tags;
  for (long long idx = 0; idx < N; ++idx) {
    long long total = 0;
    for (int w = 0; w < jobs; ++w) total += wc[w][idx];
    if (total > 0) {
      out.outcomes.push_back(product_tuple(pl.sizes, int(idx)));
      out.counts.push_back(total);
    }
  }
  return out;
}

}  // namespace hyperstab
