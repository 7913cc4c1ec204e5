#pragma once
// Shared helpers for the circuit and sampler tests: catalog-backed registers
// and a random generator for circuits from the tracked gate set (invertible
// shifts and phases, table automorphisms, register swaps, global transforms).

#include <map>
#include <random>
#include <string>
#include <vector>

#include "hyperstab/catalog.h"
#include "hyperstab/circuit.h"

namespace fixtures {

using namespace hyperstab;

inline Register catalog_register(const std::string& name) {
  Register r;
  r.table = &catalog_hypergroup(name);
  r.chars = &catalog_characters(name);
  return r;
}

// Invertible points of a register's side.
inline std::vector<int> invertible_points(const Register& r, Side tag) {
  std::vector<int> out;
  for (int p = 0; p < r.table->size; ++p) {
    double w = tag == Side::Elem ? r.table->weight[p] : r.chars->char_weight[p];
    if (std::abs(w - 1.0) <= 1e-7) out.push_back(p);
  }
  return out;
}

// Automorphism pool of the register's side table, cached per (name, side).
inline const std::vector<std::vector<int>>& automorphism_pool(const std::string& name,
                                                              const Register& r, Side tag) {
  static std::map<std::pair<std::string, int>, std::vector<std::vector<int>>> cache;
  auto key = std::make_pair(name, tag == Side::Elem ? 0 : 1);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const HypergroupTable& T = tag == Side::Elem ? *r.table : register_dual(r).table;
    it = cache.emplace(key, enumerate_automorphisms(T, 512)).first;
  }
  return it->second;
}

// A random circuit over the named catalog hypergroups, element-side inputs,
// drawn from the gate set the symbolic tracker supports.
inline Circuit random_tracked_circuit(const std::vector<std::string>& names, int depth,
                                      std::mt19937_64& rng) {
  Circuit c;
  for (const std::string& n : names) c.regs.push_back(catalog_register(n));
  c.initial_tags.assign(c.regs.size(), Side::Elem);
  std::vector<Side> tags = c.initial_tags;
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> pick_reg(0, int(names.size()) - 1);
  for (int d = 0; d < depth; ++d) {
    int k = kind(rng);
    int r = pick_reg(rng);
    if (k < 3) {  // shift
      std::vector<int> pts = invertible_points(c.regs[r], tags[r]);
      c.gates.push_back(gate_px(r, pts[rng() % pts.size()]));
    } else if (k < 6) {  // phase
      Side dual_tag = tags[r] == Side::Elem ? Side::Char : Side::Elem;
      std::vector<int> pts = invertible_points(c.regs[r], dual_tag);
      c.gates.push_back(gate_pz(r, pts[rng() % pts.size()]));
    } else if (k < 8) {  // single-register automorphism
      const auto& pool = automorphism_pool(names[r], c.regs[r], tags[r]);
      c.gates.push_back(gate_auto({r}, pool[rng() % pool.size()]));
    } else if (k == 8 && names.size() >= 2) {  // swap of two same-shape registers
      int r2 = pick_reg(rng);
      if (r2 != r && names[r] == names[r2] && tags[r] == tags[r2]) {
        int n = c.regs[r].table->size;
        std::vector<int> sw(n * n);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) sw[a * n + b] = b * n + a;
        c.gates.push_back(gate_auto({r, r2}, sw));
      } else {
        c.gates.push_back(gate_qft());
        for (Side& t : tags) t = t == Side::Elem ? Side::Char : Side::Elem;
      }
      continue;
    } else {  // global transform
      c.gates.push_back(gate_qft());
      for (Side& t : tags) t = t == Side::Elem ? Side::Char : Side::Elem;
    }
  }
  return c;
}

inline std::vector<int> random_input(const Circuit& c, std::mt19937_64& rng) {
  std::vector<int> in(c.regs.size());
  for (size_t i = 0; i < in.size(); ++i) in[i] = int(rng() % uint64_t(c.regs[i].table->size));
  return in;
}

}  // namespace fixtures
