// Symbolic simulation: the shift/phase-times-transform normal form and the
// CSS stabilizer tracker.  Both maintain data over the product of the
// registers' current bases and relabel it whenever a transform flips tags.

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hyperstab/circuit.h"

namespace hyperstab {

namespace {

std::string at_gate(int gi, const std::string& msg) {
  std::ostringstream os;
  os << "gate " << gi << ": " << msg;
  return os.str();
}

// Lift an automorphism of the targets' product to a permutation of the full
// product (identity on the other registers).
std::vector<int> full_permutation(const std::vector<int>& sizes, const std::vector<int>& regs,
                                  const std::vector<int>& map) {
  long long N = 1;
  for (int s : sizes) N *= s;
  std::vector<int> gsizes;
  long long prod = 1;
  for (int r : regs) {
    gsizes.push_back(sizes[r]);
    prod *= sizes[r];
  }
  if ((long long)map.size() != prod)
    throw Error{"Malformed", "automorphism map covers the wrong number of points"};
  std::vector<int> out(N);
  for (long long idx = 0; idx < N; ++idx) {
    std::vector<int> tup = product_tuple(sizes, int(idx));
    int si = 0;
    for (size_t j = 0; j < regs.size(); ++j) si = si * gsizes[j] + tup[regs[j]];
    std::vector<int> ms = product_tuple(gsizes, map[si]);
    for (size_t j = 0; j < regs.size(); ++j) tup[regs[j]] = ms[j];
    out[idx] = product_index(sizes, tup);
  }
  return out;
}

bool identity_perm(const std::vector<int>& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != int(i)) return false;
  return true;
}

void check_targets(const Circuit& c, const CircuitGate& g, int gi) {
  for (int r : g.regs)
    if (r < 0 || r >= int(c.regs.size()))
      throw Error{"Malformed", at_gate(gi, "target register out of range")};
}

bool point_invertible(const Register& r, Side tag, int p) {
  double w = tag == Side::Elem ? r.table->weight[p] : r.chars->char_weight[p];
  return std::abs(w - 1.0) <= 1e-7;
}

bool dual_invertible(const Register& r, Side tag, int d) {
  double w = tag == Side::Elem ? r.chars->char_weight[d] : r.table->weight[d];
  return std::abs(w - 1.0) <= 1e-7;
}

}  // namespace

NormalForm normal_form(const Circuit& c) {
  if (c.regs.empty() || c.initial_tags.size() != c.regs.size())
    throw Error{"Malformed", "circuit: register and tag counts do not match"};
  std::vector<Side> tags = c.initial_tags;
  ProductSpace cur;
  build_product_space(c, tags, &cur);
  const int N = cur.table.size;

  // Invariant: the processed prefix equals dense(paulis) . perm . transform,
  // with every Pauli term living on the current product space.
  std::vector<PauliTerm> paulis;
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  bool has_qft = false;

  auto embed_point = [&cur](int reg, int p) {
    std::vector<int> tup = product_tuple(cur.sizes, cur.table.identity);
    tup[reg] = p;
    return product_index(cur.sizes, tup);
  };
  auto embed_dual = [&cur](int reg, int m) {
    std::vector<int> tup = product_tuple(cur.sizes, cur.chars.trivial);
    tup[reg] = m;
    return product_index(cur.sizes, tup);
  };

  for (int gi = 0; gi < int(c.gates.size()); ++gi) {
    const CircuitGate& g = c.gates[gi];
    check_targets(c, g, gi);
    switch (g.kind) {
      case CGate::PauliX: {
        if (g.regs.size() != 1 || g.param < 0 || g.param >= c.regs[g.regs[0]].table->size)
          throw Error{"Malformed", at_gate(gi, "bad shift gate")};
        if (!point_invertible(c.regs[g.regs[0]], tags[g.regs[0]], g.param))
          throw Error{"Unsupported", at_gate(gi, "shift parameter is not invertible")};
        paulis.insert(paulis.begin(),
                      PauliTerm{Side::Elem, PKind::X, embed_point(g.regs[0], g.param), 1.0});
        break;
      }
      case CGate::PauliZ: {
        if (g.regs.size() != 1 || g.param < 0 || g.param >= c.regs[g.regs[0]].table->size)
          throw Error{"Malformed", at_gate(gi, "bad phase gate")};
        if (!dual_invertible(c.regs[g.regs[0]], tags[g.regs[0]], g.param))
          throw Error{"Unsupported", at_gate(gi, "phase parameter is not invertible")};
        paulis.insert(paulis.begin(),
                      PauliTerm{Side::Elem, PKind::Z, embed_dual(g.regs[0], g.param), 1.0});
        break;
      }
      case CGate::Automorphism: {
        std::vector<int> afull = full_permutation(cur.sizes, g.regs, g.map);
        Gate ag{GateKind::Automorphism, -1, afull, {}, {}};
        for (PauliTerm& t : paulis) t = conjugate_term(cur.table, cur.chars, t, ag)[0];
        for (int x = 0; x < N; ++x) perm[x] = afull[perm[x]];
        break;
      }
      case CGate::Quadratic:
        throw Error{"UnsupportedGate",
                    at_gate(gi, "quadratic phase gates have no shift/phase normal form")};
      case CGate::PartialQFT:
        if (c.regs.size() != 1)
          throw Error{"UnsupportedGate",
                      at_gate(gi, "partial transforms are only normalized on single-register "
                                  "circuits")};
        [[fallthrough]];
      case CGate::QFT: {
        // Conjugate the Pauli layer: shifts become phases and conversely, and
        // the result is re-read as element-side data of the flipped space.
        Gate qg{GateKind::QFT, -1, {}, {}, {}};
        for (PauliTerm& t : paulis) {
          t = conjugate_term(cur.table, cur.chars, t, qg)[0];
          t.side = Side::Elem;
        }
        // The permutation conjugates to the character relabeling mu -> mu o A^{-1}.
        if (!identity_perm(perm)) {
          Gate ag{GateKind::Automorphism, -1, perm, {}, {}};
          std::vector<int> relabeled(N);
          for (int mu = 0; mu < N; ++mu)
            relabeled[mu] =
                conjugate_term(cur.table, cur.chars, PauliTerm{Side::Elem, PKind::Z, mu, 1.0}, ag)[0]
                    .param;
          perm = relabeled;
        }
        bool had = has_qft;
        for (Side& t : tags) t = (t == Side::Elem) ? Side::Char : Side::Elem;
        build_product_space(c, tags, &cur);
        if (had) {
          // Two transforms cancel into the basis involution of the space they
          // enclose; fold it into the permutation.
          std::vector<int> folded(N);
          for (int x = 0; x < N; ++x) folded[x] = perm[cur.table.involution[x]];
          perm = folded;
          has_qft = false;
        } else {
          has_qft = true;
        }
        break;
      }
    }
  }

  NormalForm nf;
  nf.final_tags = tags;
  nf.has_qft = has_qft;
  nf.paulis = std::move(paulis);
  nf.perm = std::move(perm);
  return nf;
}

TrackedCss track_stabilizers(const Circuit& c, const std::vector<CssStabilizer>& inputs) {
  if (c.regs.empty() || c.initial_tags.size() != c.regs.size())
    throw Error{"Malformed", "circuit: register and tag counts do not match"};
  if (inputs.size() != c.regs.size())
    throw Error{"Malformed", "need one input stabilizer per register"};
  std::vector<Side> tags = c.initial_tags;
  for (size_t i = 0; i < inputs.size(); ++i)
    if (inputs[i].side != tags[i])
      throw Error{"Malformed", "input stabilizer side does not match the register tag"};

  ProductSpace cur;
  build_product_space(c, tags, &cur);

  // Tensor the per-register triples into one triple over the product.
  std::vector<int> members;
  {
    for (const CssStabilizer& in : inputs)
      if (in.members.empty()) throw Error{"Malformed", "input stabilizer with empty member set"};
    std::vector<size_t> pos(c.regs.size(), 0);
    std::vector<int> tup(c.regs.size());
    bool more = true;
    while (more) {
      for (size_t i = 0; i < c.regs.size(); ++i) tup[i] = inputs[i].members[pos[i]];
      members.push_back(product_index(cur.sizes, tup));
      more = false;
      for (size_t i = c.regs.size(); i-- > 0;) {
        if (++pos[i] < inputs[i].members.size()) {
          more = true;
          break;
        }
        pos[i] = 0;
      }
    }
    std::sort(members.begin(), members.end());
  }
  std::vector<int> stup(c.regs.size()), gtup(c.regs.size());
  for (size_t i = 0; i < c.regs.size(); ++i) {
    stup[i] = inputs[i].s;
    gtup[i] = inputs[i].sig;
  }
  int s = product_index(cur.sizes, stup);
  int sig = product_index(cur.sizes, gtup);
  std::vector<CircuitGate> trailing;

  for (int gi = 0; gi < int(c.gates.size()); ++gi) {
    const CircuitGate& g = c.gates[gi];
    check_targets(c, g, gi);
    if (!trailing.empty()) {
      if (g.kind == CGate::Quadratic || g.kind == CGate::PauliZ) {
        trailing.push_back(g);
        continue;
      }
      throw Error{"UnsupportedGate",
                  at_gate(gi, "only diagonal gates may follow a quadratic phase")};
    }
    switch (g.kind) {
      case CGate::PauliX: {
        if (g.regs.size() != 1 || g.param < 0 || g.param >= c.regs[g.regs[0]].table->size)
          throw Error{"Malformed", at_gate(gi, "bad shift gate")};
        int rr = g.regs[0];
        const Register& r = c.regs[rr];
        if (!point_invertible(r, tags[rr], g.param))
          throw Error{"Unsupported", at_gate(gi, "shift parameter is not invertible")};
        const HypergroupTable& comp =
            tags[rr] == Side::Elem ? *r.table : register_dual(r).table;
        std::vector<int> st = product_tuple(cur.sizes, s);
        auto pr = comp.pairs(g.param, st[rr]);
        st[rr] = pr[0].c;
        s = product_index(cur.sizes, st);
        break;
      }
      case CGate::PauliZ: {
        if (g.regs.size() != 1 || g.param < 0 || g.param >= c.regs[g.regs[0]].table->size)
          throw Error{"Malformed", at_gate(gi, "bad phase gate")};
        int rr = g.regs[0];
        const Register& r = c.regs[rr];
        if (!dual_invertible(r, tags[rr], g.param))
          throw Error{"Unsupported", at_gate(gi, "phase parameter is not invertible")};
        // Z(tau) multiplies every X(b) eigenvalue by conj(tau)(b): the
        // signature picks up the conjugate parameter.
        std::vector<int> sg = product_tuple(cur.sizes, sig);
        if (tags[rr] == Side::Elem) {
          sg[rr] = char_product_index(*r.chars, sg[rr], r.chars->conj[g.param]);
        } else {
          auto pr = r.table->pairs(sg[rr], r.table->involution[g.param]);
          sg[rr] = pr[0].c;
        }
        sig = product_index(cur.sizes, sg);
        break;
      }
      case CGate::Automorphism: {
        std::vector<int> afull = full_permutation(cur.sizes, g.regs, g.map);
        for (int& m : members) m = afull[m];
        std::sort(members.begin(), members.end());
        s = afull[s];
        Gate ag{GateKind::Automorphism, -1, afull, {}, {}};
        sig = conjugate_term(cur.table, cur.chars, PauliTerm{Side::Elem, PKind::Z, sig, 1.0},
                             ag)[0]
                  .param;
        break;
      }
      case CGate::Quadratic: {
        for (int j = gi; j < int(c.gates.size()); ++j)
          if (c.gates[j].kind != CGate::Quadratic && c.gates[j].kind != CGate::PauliZ)
            throw Error{"UnsupportedGate", at_gate(gi, "quadratic phase inside the tracked "
                                                       "region")};
        trailing.push_back(g);
        break;
      }
      case CGate::PartialQFT:
        if (c.regs.size() != 1)
          throw Error{"UnsupportedGate",
                      at_gate(gi, "partial transforms are only tracked on single-register "
                                  "circuits")};
        [[fallthrough]];
      case CGate::QFT: {
        // |N, s, sig> transforms to |annihilator(N), sig, conj(s)>.
        std::vector<int> ann = annihilator(cur.table, cur.chars, members);
        int ns = sig;
        int nsig = cur.table.involution[s];
        members = std::move(ann);
        s = ns;
        sig = nsig;
        for (Side& t : tags) t = (t == Side::Elem) ? Side::Char : Side::Elem;
        build_product_space(c, tags, &cur);
        break;
      }
    }
  }

  TrackedCss out;
  out.tags = tags;
  out.members = std::move(members);
  out.s = s;
  out.sig = sig;
  out.trailing = std::move(trailing);
  return out;
}

Eigen::VectorXcd tracked_state(const Circuit& c, const TrackedCss& t, int cap) {
  ProductSpace fin;
  build_product_space(c, t.tags, &fin);
  const int N = fin.table.size;
  if (N > cap) throw Error{"CapExceeded", "tracked state dimension exceeds the cap"};
  Eigen::VectorXcd psi =
      canonical_css_state(fin.table, fin.chars, CssStabilizer{Side::Elem, t.members, t.s, t.sig});
  for (const CircuitGate& g : t.trailing) {
    if (g.kind == CGate::Quadratic) {
      std::vector<int> gsizes;
      long long prod = 1;
      for (int r : g.regs) {
        gsizes.push_back(fin.sizes[r]);
        prod *= fin.sizes[r];
      }
      if ((long long)g.xi.size() != prod)
        throw Error{"Malformed", "trailing value table covers the wrong number of points"};
      for (int idx = 0; idx < N; ++idx) {
        std::vector<int> tup = product_tuple(fin.sizes, idx);
        int si = 0;
        for (size_t j = 0; j < g.regs.size(); ++j) si = si * gsizes[j] + tup[g.regs[j]];
        psi[idx] *= g.xi[si];
      }
    } else {  // trailing phase gate
      int rr = g.regs[0];
      const Register& r = c.regs[rr];
      for (int idx = 0; idx < N; ++idx) {
        int x = product_tuple(fin.sizes, idx)[rr];
        psi[idx] *= t.tags[rr] == Side::Elem ? r.chars->chi[g.param][x] : r.chars->chi[x][g.param];
      }
    }
  }
  return psi;
}

}  // namespace hyperstab
