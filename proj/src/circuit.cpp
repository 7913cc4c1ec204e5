#include "hyperstab/circuit.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace hyperstab {

namespace {

// Synthesized character tables are dense n^2 blocks; past this the symbolic
// machinery would stop being desk-scale anyway.
constexpr int kProductCap = 2048;

const char* gate_word(CGate k) {
  switch (k) {
    case CGate::PauliX: return "pauli-x";
    case CGate::PauliZ: return "pauli-z";
    case CGate::Automorphism: return "automorphism";
    case CGate::Quadratic: return "quadratic";
    case CGate::QFT: return "qft";
    case CGate::PartialQFT: return "partial-qft";
  }
  return "gate";
}

std::string at_gate(int gi, CGate k, const std::string& msg) {
  std::ostringstream os;
  os << "gate " << gi << " (" << gate_word(k) << "): " << msg;
  return os.str();
}

// Value of product character m at product point x, one register at a time.
// On a Char-tagged register the points are characters and the characters are
// elements (double dual), so the chi lookup transposes.
complex comp_char_value(const Register& r, Side tag, int m, int x) {
  return tag == Side::Elem ? r.chars->chi[m][x] : r.chars->chi[x][m];
}

double comp_char_weight(const Register& r, Side tag, int m) {
  return tag == Side::Elem ? r.chars->char_weight[m] : r.table->weight[m];
}

int comp_char_trivial(const Register& r, Side tag) {
  return tag == Side::Elem ? r.chars->trivial : r.table->identity;
}

int comp_char_conj(const Register& r, Side tag, int m) {
  return tag == Side::Elem ? r.chars->conj[m] : r.table->involution[m];
}

const HypergroupTable& comp_table(const Register& r, Side tag) {
  return tag == Side::Elem ? *r.table : register_dual(r).table;
}

// Is index p an invertible point of the register's current side?
bool comp_invertible_point(const Register& r, Side tag, int p) {
  double w = tag == Side::Elem ? r.table->weight[p] : r.chars->char_weight[p];
  return std::abs(w - 1.0) <= 1e-7;
}

// Is index d an invertible point of the dual of the current side?
bool comp_invertible_dual(const Register& r, Side tag, int d) {
  double w = tag == Side::Elem ? r.chars->char_weight[d] : r.table->weight[d];
  return std::abs(w - 1.0) <= 1e-7;
}

long long checked_product_dim(const std::vector<int>& sizes, long long cap,
                              const char* what) {
  long long n = 1;
  for (int s : sizes) {
    n *= s;
    if (n > cap) throw Error{"CapExceeded", std::string(what) + " dimension exceeds the cap"};
  }
  return n;
}

// Product space over an arbitrary register subset, in the given order.
void build_space_over(const std::vector<Register>& regs, const std::vector<Side>& tags,
                      const std::vector<int>& which, ProductSpace* out) {
  if (which.empty()) throw Error{"Malformed", "product over no registers"};
  out->sizes.clear();
  out->tags.clear();
  for (int r : which) {
    out->sizes.push_back(regs[r].table->size);
    out->tags.push_back(tags[r]);
  }
  int n = int(checked_product_dim(out->sizes, kProductCap, "synthesized product"));

  const HypergroupTable& first = comp_table(regs[which[0]], tags[which[0]]);
  out->table = first;
  for (size_t i = 1; i < which.size(); ++i)
    out->table = tensor_product(out->table, comp_table(regs[which[i]], tags[which[i]]));

  CharacterTable& C = out->chars;
  C.parent = &out->table;
  C.size = n;
  C.chi.assign(n, std::vector<complex>(n));
  C.char_weight.assign(n, 0.0);
  C.conj.assign(n, 0);
  C.max_residual = 0;
  std::vector<int> triv(which.size()), ctup(which.size());
  for (size_t i = 0; i < which.size(); ++i) {
    triv[i] = comp_char_trivial(regs[which[i]], tags[which[i]]);
    C.max_residual = std::max(C.max_residual, regs[which[i]].chars->max_residual);
  }
  C.trivial = product_index(out->sizes, triv);
  for (int m = 0; m < n; ++m) {
    std::vector<int> mt = product_tuple(out->sizes, m);
    double cw = 1;
    for (size_t i = 0; i < which.size(); ++i) {
      cw *= comp_char_weight(regs[which[i]], tags[which[i]], mt[i]);
      ctup[i] = comp_char_conj(regs[which[i]], tags[which[i]], mt[i]);
    }
    C.char_weight[m] = cw;
    C.conj[m] = product_index(out->sizes, ctup);
    for (int x = 0; x < n; ++x) {
      std::vector<int> xt = product_tuple(out->sizes, x);
      complex v = 1;
      for (size_t i = 0; i < which.size(); ++i)
        v *= comp_char_value(regs[which[i]], tags[which[i]], mt[i], xt[i]);
      C.chi[m][x] = v;
    }
  }
}

// One-register QFT matrix at the given tag: F(mu,x) = sqrt(w~_mu w_x / W) X_mu(x)
// on the element side, its transpose on the character side.
Eigen::MatrixXcd qft_matrix(const Register& r, Side tag) {
  const CharacterTable& C = *r.chars;
  const HypergroupTable& T = *r.table;
  int n = T.size;
  double W = 0;
  if (tag == Side::Elem) {
    W = T.total_weight;
  } else {
    for (double w : C.char_weight) W += w;
  }
  Eigen::MatrixXcd F(n, n);
  for (int m = 0; m < n; ++m)
    for (int x = 0; x < n; ++x) {
      if (tag == Side::Elem)
        F(m, x) = std::sqrt(C.char_weight[m] * T.weight[x] / W) * C.chi[m][x];
      else
        F(m, x) = std::sqrt(T.weight[m] * C.char_weight[x] / W) * C.chi[x][m];
    }
  return F;
}

// Apply an n x n matrix along one axis of the row-major state tensor.
void apply_axis(Eigen::VectorXcd& psi, const std::vector<int>& sizes, int axis,
                const Eigen::MatrixXcd& M) {
  int n = sizes[axis];
  long long stride = 1;
  for (size_t j = size_t(axis) + 1; j < sizes.size(); ++j) stride *= sizes[j];
  long long outer = psi.size() / (stride * n);
  Eigen::VectorXcd buf(n);
  for (long long o = 0; o < outer; ++o)
    for (long long s = 0; s < stride; ++s) {
      long long base = o * n * stride + s;
      for (int k = 0; k < n; ++k) buf[k] = psi[base + k * stride];
      buf = M * buf;
      for (int k = 0; k < n; ++k) psi[base + k * stride] = buf[k];
    }
}

// Indices of the gate's target sub-tuple within the full product.
int sub_index(const std::vector<int>& tuple, const std::vector<int>& regs,
              const std::vector<int>& gsizes) {
  int si = 0;
  for (size_t j = 0; j < regs.size(); ++j) si = si * gsizes[j] + tuple[regs[j]];
  return si;
}

}  // namespace

int product_index(const std::vector<int>& sizes, const std::vector<int>& tuple) {
  int idx = 0;
  for (size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + tuple[i];
  return idx;
}

std::vector<int> product_tuple(const std::vector<int>& sizes, int index) {
  std::vector<int> t(sizes.size());
  for (size_t i = sizes.size(); i-- > 0;) {
    t[i] = index % sizes[i];
    index /= sizes[i];
  }
  return t;
}

const DualTable& register_dual(const Register& r) {
  if (r.dual) return *r.dual;
  static std::mutex mu;
  static std::map<const HypergroupTable*, DualTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(r.table);
  if (it == cache.end()) it = cache.emplace(r.table, dual_hypergroup(*r.table, *r.chars)).first;
  return it->second;
}

CircuitGate gate_px(int reg, int elem) { return {CGate::PauliX, {reg}, elem, {}, {}}; }
CircuitGate gate_pz(int reg, int chr) { return {CGate::PauliZ, {reg}, chr, {}, {}}; }
CircuitGate gate_auto(std::vector<int> regs, std::vector<int> map) {
  return {CGate::Automorphism, std::move(regs), -1, std::move(map), {}};
}
CircuitGate gate_quad(std::vector<int> regs, std::vector<complex> xi) {
  return {CGate::Quadratic, std::move(regs), -1, {}, std::move(xi)};
}
CircuitGate gate_qft() { return {CGate::QFT, {}, -1, {}, {}}; }
CircuitGate gate_pqft(int reg) { return {CGate::PartialQFT, {reg}, -1, {}, {}}; }

void build_product_space(const Circuit& c, const std::vector<Side>& tags, ProductSpace* out) {
  if (c.regs.empty()) throw Error{"Malformed", "circuit has no registers"};
  if (tags.size() != c.regs.size())
    throw Error{"Malformed", "tag vector does not match the register count"};
  std::vector<int> all(c.regs.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = int(i);
  build_space_over(c.regs, tags, all, out);
}

CircuitReport validate_circuit(const Circuit& c) {
  CircuitReport rep;
  if (c.regs.empty() || c.initial_tags.size() != c.regs.size()) {
    rep.ok = false;
    rep.problems.push_back("circuit: register and tag counts do not match");
    rep.final_tags = c.initial_tags;
    return rep;
  }
  rep.final_tags = c.initial_tags;
  std::vector<Side>& tags = rep.final_tags;
  auto complain = [&rep](int gi, CGate k, const std::string& msg) {
    rep.ok = false;
    rep.problems.push_back(at_gate(gi, k, msg));
  };

  for (int gi = 0; gi < int(c.gates.size()); ++gi) {
    const CircuitGate& g = c.gates[gi];
    bool targets_ok = true;
    std::vector<int> seen;
    for (int r : g.regs) {
      if (r < 0 || r >= int(c.regs.size())) {
        complain(gi, g.kind, "target register out of range");
        targets_ok = false;
        break;
      }
      if (std::find(seen.begin(), seen.end(), r) != seen.end()) {
        complain(gi, g.kind, "repeated target register");
        targets_ok = false;
        break;
      }
      seen.push_back(r);
    }
    if (!targets_ok) continue;

    switch (g.kind) {
      case CGate::PauliX: {
        if (g.regs.size() != 1) {
          complain(gi, g.kind, "needs exactly one target register");
          break;
        }
        const Register& r = c.regs[g.regs[0]];
        if (g.param < 0 || g.param >= r.table->size) {
          complain(gi, g.kind, "shift parameter out of range");
          break;
        }
        if (!comp_invertible_point(r, tags[g.regs[0]], g.param))
          complain(gi, g.kind, "shift parameter '" +
                                   (tags[g.regs[0]] == Side::Elem ? r.table->label(g.param)
                                                                  : std::to_string(g.param)) +
                                   "' is not invertible on the current basis");
        break;
      }
      case CGate::PauliZ: {
        if (g.regs.size() != 1) {
          complain(gi, g.kind, "needs exactly one target register");
          break;
        }
        const Register& r = c.regs[g.regs[0]];
        if (g.param < 0 || g.param >= r.table->size) {
          complain(gi, g.kind, "phase parameter out of range");
          break;
        }
        if (!comp_invertible_dual(r, tags[g.regs[0]], g.param))
          complain(gi, g.kind, "phase parameter is not an invertible character");
        break;
      }
      case CGate::Automorphism: {
        if (g.regs.empty()) {
          complain(gi, g.kind, "needs at least one target register");
          break;
        }
        long long prod = 1;
        for (int r : g.regs) prod *= c.regs[r].table->size;
        if ((long long)g.map.size() != prod) {
          complain(gi, g.kind, "map covers the wrong number of points");
          break;
        }
        std::vector<char> hit(g.map.size(), 0);
        bool bij = true;
        for (int v : g.map) {
          if (v < 0 || v >= int(g.map.size()) || hit[v]) {
            bij = false;
            break;
          }
          hit[v] = 1;
        }
        if (!bij) {
          complain(gi, g.kind, "map is not a bijection");
          break;
        }
        if (prod <= 1024) {
          ProductSpace ps;
          build_space_over(c.regs, tags, g.regs, &ps);
          double res = 0;
          if (!is_automorphism(ps.table, g.map, &res)) {
            std::ostringstream os;
            os << "map does not preserve the structure constants (residual " << res << ")";
            complain(gi, g.kind, os.str());
          }
        }
        break;
      }
      case CGate::Quadratic: {
        if (g.regs.empty()) {
          complain(gi, g.kind, "needs at least one target register");
          break;
        }
        long long prod = 1;
        for (int r : g.regs) prod *= c.regs[r].table->size;
        if ((long long)g.xi.size() != prod) {
          complain(gi, g.kind, "value table covers the wrong number of points");
          break;
        }
        if (prod <= 1024) {
          try {
            ProductSpace ps;
            build_space_over(c.regs, tags, g.regs, &ps);
            validate_quadratic(ps.table, ps.chars, g.xi);
          } catch (const Error& e) {
            complain(gi, g.kind, e.what());
          }
        }
        break;
      }
      case CGate::QFT:
        if (!g.regs.empty()) {
          complain(gi, g.kind, "the global transform takes no target list");
          break;
        }
        for (Side& t : tags) t = (t == Side::Elem) ? Side::Char : Side::Elem;
        break;
      case CGate::PartialQFT: {
        if (g.regs.size() != 1) {
          complain(gi, g.kind, "needs exactly one target register");
          break;
        }
        Side& t = tags[g.regs[0]];
        t = (t == Side::Elem) ? Side::Char : Side::Elem;
        break;
      }
    }
  }
  return rep;
}

DenseState simulate_dense(const Circuit& c, const std::vector<int>& input, int cap) {
  if (c.regs.empty() || c.initial_tags.size() != c.regs.size())
    throw Error{"Malformed", "circuit: register and tag counts do not match"};
  if (input.size() != c.regs.size())
    throw Error{"Malformed", "input needs one basis label per register"};
  std::vector<int> sizes(c.regs.size());
  for (size_t i = 0; i < c.regs.size(); ++i) {
    sizes[i] = c.regs[i].table->size;
    if (input[i] < 0 || input[i] >= sizes[i])
      throw Error{"Malformed", "input label out of range"};
  }
  long long N = checked_product_dim(sizes, cap, "dense state");

  DenseState st;
  st.tags = c.initial_tags;
  st.amps = Eigen::VectorXcd::Zero(N);
  st.amps[product_index(sizes, input)] = 1.0;

  for (int gi = 0; gi < int(c.gates.size()); ++gi) {
    const CircuitGate& g = c.gates[gi];
    for (int r : g.regs)
      if (r < 0 || r >= int(c.regs.size()))
        throw Error{"Malformed", at_gate(gi, g.kind, "target register out of range")};
    switch (g.kind) {
      case CGate::PauliX:
      case CGate::PauliZ: {
        if (g.regs.size() != 1)
          throw Error{"Malformed", at_gate(gi, g.kind, "needs exactly one target register")};
        int rr = g.regs[0];
        const Register& r = c.regs[rr];
        if (g.param < 0 || g.param >= r.table->size)
          throw Error{"Malformed", at_gate(gi, g.kind, "parameter out of range")};
        bool inv = g.kind == CGate::PauliX ? comp_invertible_point(r, st.tags[rr], g.param)
                                           : comp_invertible_dual(r, st.tags[rr], g.param);
        if (!inv)
          throw Error{"Unsupported", at_gate(gi, g.kind, "parameter is not invertible")};
        PauliTerm t{st.tags[rr], g.kind == CGate::PauliX ? PKind::X : PKind::Z, g.param, 1.0};
        Eigen::MatrixXcd M = dense_pauli(*r.table, *r.chars, t, &register_dual(r));
        apply_axis(st.amps, sizes, rr, M);
        break;
      }
      case CGate::Automorphism: {
        std::vector<int> gsizes;
        for (int r : g.regs) gsizes.push_back(sizes[r]);
        long long prod = 1;
        for (int s : gsizes) prod *= s;
        if ((long long)g.map.size() != prod)
          throw Error{"Malformed", at_gate(gi, g.kind, "map covers the wrong number of points")};
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(N);
        for (long long idx = 0; idx < N; ++idx) {
          std::vector<int> tup = product_tuple(sizes, int(idx));
          int si = sub_index(tup, g.regs, gsizes);
          std::vector<int> ms = product_tuple(gsizes, g.map[si]);
          for (size_t j = 0; j < g.regs.size(); ++j) tup[g.regs[j]] = ms[j];
          out[product_index(sizes, tup)] += st.amps[idx];
        }
        st.amps = std::move(out);
        break;
      }
      case CGate::Quadratic: {
        std::vector<int> gsizes;
        for (int r : g.regs) gsizes.push_back(sizes[r]);
        long long prod = 1;
        for (int s : gsizes) prod *= s;
        if ((long long)g.xi.size() != prod)
          throw Error{"Malformed",
                      at_gate(gi, g.kind, "value table covers the wrong number of points")};
        for (long long idx = 0; idx < N; ++idx) {
          std::vector<int> tup = product_tuple(sizes, int(idx));
          st.amps[idx] *= g.xi[sub_index(tup, g.regs, gsizes)];
        }
        break;
      }
      case CGate::QFT:
        for (size_t rr = 0; rr < c.regs.size(); ++rr) {
          apply_axis(st.amps, sizes, int(rr), qft_matrix(c.regs[rr], st.tags[rr]));
          st.tags[rr] = (st.tags[rr] == Side::Elem) ? Side::Char : Side::Elem;
        }
        break;
      case CGate::PartialQFT: {
        if (g.regs.size() != 1)
          throw Error{"Malformed", at_gate(gi, g.kind, "needs exactly one target register")};
        int rr = g.regs[0];
        apply_axis(st.amps, sizes, rr, qft_matrix(c.regs[rr], st.tags[rr]));
        st.tags[rr] = (st.tags[rr] == Side::Elem) ? Side::Char : Side::Elem;
        break;
      }
    }
  }
  return st;
}

Eigen::MatrixXcd dense_unitary(const Circuit& c, int cap) {
  std::vector<int> sizes(c.regs.size());
  for (size_t i = 0; i < c.regs.size(); ++i) sizes[i] = c.regs[i].table->size;
  long long N = checked_product_dim(sizes, cap, "dense unitary");
  Eigen::MatrixXcd U(N, N);
  for (long long col = 0; col < N; ++col) {
    DenseState st = simulate_dense(c, product_tuple(sizes, int(col)), cap);
    U.col(col) = st.amps;
  }
  return U;
}

QuadraticFunction validate_quadratic(const HypergroupTable& T, const CharacterTable& C,
                                     const std::vector<complex>& xi) {
  if (int(xi.size()) != T.size)
    throw Error{"Malformed", "quadratic value table does not match the carrier size"};
  QuadraticFunction q;
  q.xi = xi;
  for (int a = 0; a < T.size; ++a)
    if (std::abs(std::abs(xi[a]) - 1.0) > 1e-9)
      throw Error{"NotQuadratic", "values must be unit modulus (fails at '" + T.label(a) + "')"};
  if (std::abs(xi[T.identity] - 1.0) > 1e-9)
    throw Error{"NotQuadratic", "value at the identity must be 1"};

  // B(a,b) = xi(c)/(xi(a) xi(b)) must not depend on the choice of c in
  // supp(a b); that constant is the pairing.
  q.pairing.assign(T.size, std::vector<complex>(T.size));
  for (int a = 0; a < T.size; ++a)
    for (int b = 0; b < T.size; ++b) {
      auto pr = T.pairs(a, b);
      complex ref = xi[pr[0].c] / (xi[a] * xi[b]);
      for (const Term& t : pr) {
        complex v = xi[t.c] / (xi[a] * xi[b]);
        double r = std::abs(v - ref);
        if (r > 1e-9)
          throw Error{"NotQuadratic", "xi(c)/(xi(a) xi(b)) is not constant on supp('" +
                                          T.label(a) + "' '" + T.label(b) + "')"};
        q.max_residual = std::max(q.max_residual, r);
      }
      q.pairing[a][b] = ref;
    }

  // Each pairing row must be an invertible character ...
  q.beta.assign(T.size, -1);
  for (int a = 0; a < T.size; ++a) {
    try {
      q.beta[a] = character_index_of(C, q.pairing[a], 1e-6);
    } catch (const Error&) {
      throw Error{"NotQuadratic",
                  "pairing row at '" + T.label(a) + "' is not a character of the table"};
    }
    if (std::abs(C.char_weight[q.beta[a]] - 1.0) > 1e-7)
      throw Error{"NotQuadratic",
                  "pairing row at '" + T.label(a) + "' is not an invertible character"};
  }
  // ... and a -> beta(a) must be multiplicative across every product support.
  for (int a = 0; a < T.size; ++a)
    for (int b = 0; b < T.size; ++b) {
      int target;
      try {
        target = char_product_index(C, q.beta[a], q.beta[b]);
      } catch (const Error&) {
        throw Error{"NotQuadratic", "pairing rows at '" + T.label(a) + "', '" + T.label(b) +
                                        "' do not multiply to a character"};
      }
      for (const Term& t : T.pairs(a, b))
        if (q.beta[t.c] != target)
          throw Error{"NotQuadratic", "pairing fails to be multiplicative at supp('" +
                                          T.label(a) + "' '" + T.label(b) + "')"};
    }
  return q;
}

CssStabilizer basis_point_stabilizer(const Register& r, Side tag, int idx) {
  if (idx < 0 || idx >= r.table->size) throw Error{"Malformed", "basis label out of range"};
  CssStabilizer st;
  st.side = tag;
  if (tag == Side::Elem) {
    st.members = {r.table->identity};
    st.s = idx;
    st.sig = r.chars->trivial;
  } else {
    st.members = {r.chars->trivial};
    st.s = idx;
    st.sig = r.table->identity;
  }
  return st;
}

}  // namespace hyperstab
