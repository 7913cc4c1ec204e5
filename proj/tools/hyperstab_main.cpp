// hyperstab: command-line surface over the hypergroup library.
//
// Exit codes: 0 success, 1 validation failure or library error, 2 usage
// error.  --format json emits exactly one document; all floating-point
// output is printed at 12 significant digits, so identical inputs (and
// seeds) give byte-identical output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperstab/catalog.h"
#include "hyperstab/characters.h"
#include "hyperstab/circuit.h"
#include "hyperstab/group.h"
#include "hyperstab/hshp.h"
#include "hyperstab/hypergroup.h"
#include "hyperstab/io.h"
#include "hyperstab/pauli.h"

namespace {

using hyperstab::complex;
using json = nlohmann::ordered_json;

// Post-parse usage problems (an argument that names nothing); printed with
// the offending flag and mapped to exit code 2.
struct UsageError {
  std::string flag;
  std::string msg;
};

std::string fmt12(double v) {
  if (v == 0) v = 0;  // never print -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Complex values as re+imi (e.g. 1+0i, -0.5-0.866025403784i).
std::string fmt_complex(complex z) {
  std::string re = fmt12(z.real());
  std::string im = fmt12(z.imag());
  return re + (im[0] == '-' ? im : "+" + im) + "i";
}

// v printed as an unreduced fraction num/den when v*den is within 1e-6 of an
// integer (den itself integral), else as a 12-digit decimal.  Distribution
// tables pass den = W^2 so that exact outcome laws read as small counts over
// the squared total weight.
std::string maybe_rational(double v, double den) {
  double d = std::round(den);
  double num = v * d;
  double r = std::round(num);
  if (d >= 1 && d <= 9e15 && std::abs(den - d) <= 1e-6 && std::abs(num - r) <= 1e-6)
    return std::to_string((long long)r) + "/" + std::to_string((long long)d);
  return fmt12(v);
}

// Deterministic JSON writer: 2-space indent, floats via fmt12, scalar arrays
// on one line.  nlohmann's own dump() prints shortest-round-trip floats,
// which is more digits than the interface promises.
void dump_json_rec(const json& j, std::string& out, int depth) {
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        out.append(size_t(depth + 1) * 2, ' ');
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_json_rec(it.value(), out, depth + 1);
        if (k + 1 < j.size()) out += ",";
        out += "\n";
      }
      out.append(size_t(depth) * 2, ' ');
      out += "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      if (scalars) {
        out += "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_json_rec(j[i], out, depth);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        out.append(size_t(depth + 1) * 2, ' ');
        dump_json_rec(j[i], out, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out.append(size_t(depth) * 2, ' ');
      out += "]";
      return;
    }
    case json::value_t::number_float:
      out += fmt12(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

void print_json(const json& j) {
  std::string out;
  dump_json_rec(j, out, 0);
  out += "\n";
  std::fwrite(out.data(), 1, out.size(), stdout);
}

template <typename T>
std::string join(const std::vector<T>& v, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    if constexpr (std::is_same_v<T, std::string>)
      out += v[i];
    else
      out += std::to_string(v[i]);
  }
  return out;
}

std::string side_str(hyperstab::Side s) { return s == hyperstab::Side::Elem ? "elem" : "char"; }

std::vector<std::string> tag_strs(const std::vector<hyperstab::Side>& tags) {
  std::vector<std::string> out;
  for (hyperstab::Side s : tags) out.push_back(side_str(s));
  return out;
}

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

// ---------------------------------------------------------------------------
// Argument resolution: a --group/table spec is a file path (sniffed by its
// header keyword) or a catalog name.  Catalog group names also provide the
// conjugacy-class hypergroup; conj-<group> names also provide the group.

struct Resolved {
  std::string name;
  const hyperstab::HypergroupTable* T = nullptr;
  const hyperstab::CharacterTable* C = nullptr;
  const hyperstab::FiniteGroup* G = nullptr;
  const hyperstab::ClassTable* CT = nullptr;
  std::unique_ptr<hyperstab::HypergroupTable> own_T;
  std::unique_ptr<hyperstab::CharacterTable> own_C;
  std::unique_ptr<hyperstab::FiniteGroup> own_G;
  std::unique_ptr<hyperstab::ClassTable> own_CT;
};

std::string first_keyword(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (ls >> tok) return tok;
  }
  return "";
}

Resolved resolve_spec(const std::string& spec, const std::string& flag) {
  Resolved r;
  if (file_exists(spec)) {
    std::string text = hyperstab::read_text_file(spec);
    std::string kw = first_keyword(text);
    if (kw == "group") {
      r.own_G = std::make_unique<hyperstab::FiniteGroup>(hyperstab::parse_group_text(text));
      r.own_CT = std::make_unique<hyperstab::ClassTable>(hyperstab::class_hypergroup(*r.own_G));
      r.own_C = std::make_unique<hyperstab::CharacterTable>(
          hyperstab::compute_characters(r.own_CT->table));
      r.G = r.own_G.get();
      r.CT = r.own_CT.get();
      r.T = &r.own_CT->table;
      r.C = r.own_C.get();
      r.name = r.G->name;
    } else if (kw == "hypergroup") {
      r.own_T = std::make_unique<hyperstab::HypergroupTable>(
          hyperstab::parse_hypergroup_text(text));
      r.own_C =
          std::make_unique<hyperstab::CharacterTable>(hyperstab::compute_characters(*r.own_T));
      r.T = r.own_T.get();
      r.C = r.own_C.get();
      r.name = r.T->name;
    } else {
      throw hyperstab::Error("Malformed",
                             spec + ": expected a group or hypergroup file header");
    }
    return r;
  }
  if (hyperstab::catalog_has_group(spec)) {
    r.G = &hyperstab::catalog_group(spec);
    r.CT = &hyperstab::catalog_class_table(spec);
    r.T = &hyperstab::catalog_hypergroup("conj-" + spec);
    r.C = &hyperstab::catalog_characters("conj-" + spec);
    r.name = spec;
    return r;
  }
  if (hyperstab::catalog_has_hypergroup(spec)) {
    r.T = &hyperstab::catalog_hypergroup(spec);
    r.C = &hyperstab::catalog_characters(spec);
    r.name = spec;
    if (spec.rfind("conj-", 0) == 0) {
      std::string g = spec.substr(5);
      if (hyperstab::catalog_has_group(g)) {
        r.G = &hyperstab::catalog_group(g);
        r.CT = &hyperstab::catalog_class_table(g);
      }
    }
    return r;
  }
  throw UsageError{flag, spec + " is neither a readable file nor a catalog name"};
}

const hyperstab::FiniteGroup& need_group(const Resolved& r, const std::string& flag) {
  if (!r.G)
    throw hyperstab::Error("NoMatch", flag + " " + r.name +
                                          ": this command needs a finite group "
                                          "(a group file or catalog group name)");
  return *r.G;
}

bool parse_index_token(const std::string& tok, int* out) {
  if (tok.empty()) return false;
  for (char ch : tok)
    if (ch < '0' || ch > '9') return false;
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) return false;
    *out = v;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// Split on commas outside parentheses, so labels like (0,1,2) stay whole.
std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// Class token: index, class label, group-element label (its class), or the
// literal e for the identity class.
int resolve_class_token(const Resolved& r, const std::string& tok, const std::string& flag) {
  int idx = -1;
  if (parse_index_token(tok, &idx)) {
    if (idx < 0 || idx >= r.T->size)
      throw UsageError{flag, "class index " + tok + " out of range for " + r.name};
    return idx;
  }
  if (tok == "e") return r.T->identity;
  for (int i = 0; i < r.T->size; ++i)
    if (r.T->labels[i] == tok) return i;
  if (r.G && r.CT)
    for (int g = 0; g < r.G->order; ++g)
      if (r.G->labels[g] == tok) return r.CT->part.class_of[g];
  throw UsageError{flag, "unknown class token " + tok + " for " + r.name};
}

int resolve_element_token(const Resolved& r, const std::string& tok, const std::string& flag) {
  const hyperstab::FiniteGroup& G = need_group(r, flag);
  int idx = -1;
  if (parse_index_token(tok, &idx)) {
    if (idx < 0 || idx >= G.order)
      throw UsageError{flag, "element index " + tok + " out of range for " + r.name};
    return idx;
  }
  if (tok == "e") return G.identity;
  for (int g = 0; g < G.order; ++g)
    if (G.labels[g] == tok) return g;
  throw UsageError{flag, "unknown element token " + tok + " for " + r.name};
}

// Oracle specs for class-label oracles: trivial | identity | coset:<classes>
// | file:<path with one label per class>.
std::function<int(int)> make_class_oracle(const Resolved& r, const std::string& spec) {
  if (spec == "trivial") return [](int) { return 0; };
  if (spec == "identity") return [](int c) { return c; };
  if (spec.rfind("coset:", 0) == 0) {
    std::vector<int> seed;
    for (const std::string& tok : split_commas(spec.substr(6)))
      seed.push_back(resolve_class_token(r, tok, "--oracle"));
    hyperstab::SubhypergroupView N = hyperstab::closure(*r.T, seed);
    auto labels = std::make_shared<std::vector<int>>(hyperstab::coset_labels(*r.T, N));
    return [labels](int c) { return labels->at(size_t(c)); };
  }
  if (spec.rfind("file:", 0) == 0) {
    std::string text = hyperstab::read_text_file(spec.substr(5));
    auto labels = std::make_shared<std::vector<int>>();
    std::istringstream in(text);
    int v = 0;
    while (in >> v) labels->push_back(v);
    if (int(labels->size()) != r.T->size)
      throw hyperstab::Error("Malformed", "oracle file has " +
                                              std::to_string(labels->size()) +
                                              " labels, expected " + std::to_string(r.T->size));
    return [labels](int c) { return labels->at(size_t(c)); };
  }
  throw UsageError{"--oracle", "unknown oracle spec " + spec +
                                   " (use trivial, identity, coset:<classes>, file:<path>)"};
}

// Oracle factories for the recursive driver: identity | constant |
// elements:<generators of the hidden subgroup>.
hyperstab::OracleFactory make_oracle_factory(const Resolved& r, const std::string& spec) {
  using hyperstab::SubgroupProblem;
  if (spec == "identity")
    return [](const SubgroupProblem&) -> std::function<int(int)> {
      return [](int c) { return c; };
    };
  if (spec == "constant")
    return [](const SubgroupProblem&) -> std::function<int(int)> {
      return [](int) { return 0; };
    };
  if (spec.rfind("elements:", 0) == 0) {
    const hyperstab::FiniteGroup& G = need_group(r, "--oracle");
    std::vector<int> H{G.identity};
    for (const std::string& tok : split_commas(spec.substr(9)))
      H.push_back(resolve_element_token(r, tok, "--oracle"));
    // Close under products and inverses.
    std::sort(H.begin(), H.end());
    H.erase(std::unique(H.begin(), H.end()), H.end());
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<int> next = H;
      for (int a : H) {
        for (int b : H) {
          int ab = G.mul(a, b);
          if (!std::binary_search(H.begin(), H.end(), ab)) next.push_back(ab);
        }
        int ia = G.inverse[a];
        if (!std::binary_search(H.begin(), H.end(), ia)) next.push_back(ia);
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      grew = next.size() > H.size();
      H = std::move(next);
    }
    auto hidden = std::make_shared<std::vector<int>>(std::move(H));
    return [hidden](const SubgroupProblem& p) -> std::function<int(int)> {
      // Classes of p fully inside the hidden set form the hidden
      // subhypergroup at this level; label by its cosets.
      std::vector<int> mem;
      for (int c = 0; c < p.classes.table.size; ++c) {
        bool inside = true;
        for (int local : p.classes.part.classes[c])
          if (!std::binary_search(hidden->begin(), hidden->end(), p.elements[local])) {
            inside = false;
            break;
          }
        if (inside) mem.push_back(c);
      }
      std::vector<int> lab = hyperstab::coset_labels(
          p.classes.table, hyperstab::subhypergroup_view(p.classes.table, mem));
      return [lab](int c) { return lab.at(size_t(c)); };
    };
  }
  throw UsageError{"--oracle", "unknown oracle spec " + spec +
                                   " (use identity, constant, elements:<members>)"};
}

std::vector<std::string> labels_of(const hyperstab::HypergroupTable& T,
                                   const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(T.labels[size_t(i)]);
  return out;
}

std::vector<std::string> glabels_of(const hyperstab::FiniteGroup& G,
                                    const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(G.labels[size_t(i)]);
  return out;
}

// ---------------------------------------------------------------------------
// hg subcommands

int run_hg_validate(const std::string& file, const std::string& format) {
  hyperstab::HypergroupTable T = hyperstab::read_hypergroup_file(file);
  hyperstab::ValidationReport rep = hyperstab::validate(T);
  if (format == "json") {
    json j;
    j["name"] = T.name;
    j["size"] = T.size;
    j["exact"] = T.exact;
    j["ok"] = rep.ok;
    j["max_residual"] = rep.max_residual;
    json ax = json::array();
    for (const auto& a : rep.axioms)
      ax.push_back(json{{"axiom", a.axiom}, {"pass", a.pass}, {"residual", a.residual}});
    j["axioms"] = ax;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# hypergroup " << T.name << " size " << T.size << (T.exact ? " exact" : "")
        << "\n";
    out << "axiom\tpass\tresidual\n";
    for (const auto& a : rep.axioms)
      out << a.axiom << "\t" << (a.pass ? "pass" : "fail") << "\t" << fmt12(a.residual)
          << "\n";
    out << "overall\t" << (rep.ok ? "pass" : "fail") << "\t" << fmt12(rep.max_residual)
        << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return rep.ok ? 0 : 1;
}

int run_hg_chars(const std::string& spec, const std::string& format) {
  Resolved r = resolve_spec(spec, "table");
  const hyperstab::CharacterTable& C = *r.C;
  if (format == "json") {
    json j;
    j["name"] = r.name;
    j["size"] = C.size;
    j["trivial"] = C.trivial;
    j["max_residual"] = C.max_residual;
    j["element_labels"] = r.T->labels;
    j["element_weights"] = json(r.T->weight);
    json rows = json::array();
    for (int mu = 0; mu < C.size; ++mu) {
      json row;
      row["index"] = mu;
      row["weight"] = C.char_weight[mu];
      row["conjugate"] = C.conj[mu];
      std::vector<std::string> vals;
      for (int a = 0; a < C.size; ++a) vals.push_back(fmt_complex(C.chi[mu][a]));
      row["values"] = vals;
      rows.push_back(row);
    }
    j["characters"] = rows;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# hypergroup " << r.name << " size " << C.size << " trivial " << C.trivial
        << " max_residual " << fmt12(C.max_residual) << "\n";
    out << "# columns: char weight values over elements: ";
    for (int a = 0; a < r.T->size; ++a) out << (a ? " " : "") << r.T->labels[a];
    out << "\n";
    for (int mu = 0; mu < C.size; ++mu) {
      out << mu << "\t" << fmt12(C.char_weight[mu]);
      for (int a = 0; a < C.size; ++a) out << "\t" << fmt_complex(C.chi[mu][a]);
      out << "\n";
    }
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

int run_hg_dual(const std::string& spec, const std::string& format) {
  Resolved r = resolve_spec(spec, "table");
  hyperstab::DualTable D = hyperstab::dual_hypergroup(*r.T, *r.C);
  if (format == "json") {
    json j;
    j["name"] = D.table.name;
    j["size"] = D.table.size;
    j["signed"] = D.signed_flag;
    j["max_imag"] = D.max_imag;
    j["solve_residual"] = D.solve_residual;
    j["identity"] = D.table.identity;
    j["involution"] = D.table.involution;
    j["weights"] = json(D.table.weight);
    json triples = json::array();
    for (int a = 0; a < D.table.size; ++a)
      for (int b = 0; b < D.table.size; ++b)
        for (const hyperstab::Term& t : D.table.pairs(a, b))
          triples.push_back(json{{"a", a}, {"b", b}, {"c", t.c}, {"v", t.v}});
    j["triples"] = triples;
    print_json(j);
  } else {
    // Default output is a hypergroup file, so `hg dual X > dual.hg`
    // round-trips; diagnostics go to stderr.
    std::fputs(hyperstab::hypergroup_to_text(D.table).c_str(), stdout);
    std::ostringstream note;
    note << "# dual of " << r.name << ": signed " << (D.signed_flag ? "true" : "false")
         << " max_imag " << fmt12(D.max_imag) << " solve_residual "
         << fmt12(D.solve_residual) << "\n";
    std::fputs(note.str().c_str(), stderr);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// group subcommands

int run_group_classes(const std::string& spec, std::string out_path,
                      const std::string& format) {
  Resolved r = resolve_spec(spec, "group");
  const hyperstab::FiniteGroup& G = need_group(r, "group");
  const hyperstab::ClassTable& CT = *r.CT;
  if (out_path.empty()) out_path = G.name + "-classes.hg";
  hyperstab::write_text_file(out_path, hyperstab::hypergroup_to_text(CT.table));
  if (format == "json") {
    json j;
    j["group"] = G.name;
    j["order"] = G.order;
    j["class_count"] = int(CT.part.classes.size());
    json rows = json::array();
    for (size_t c = 0; c < CT.part.classes.size(); ++c) {
      json row;
      row["index"] = int(c);
      row["size"] = int(CT.part.classes[c].size());
      row["representative"] = G.labels[size_t(CT.part.representative[c])];
      row["members"] = glabels_of(G, CT.part.classes[c]);
      rows.push_back(row);
    }
    j["classes"] = rows;
    j["file"] = out_path;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# group " << G.name << " order " << G.order << " classes "
        << CT.part.classes.size() << "\n";
    out << "class\tsize\trepresentative\tmembers\n";
    for (size_t c = 0; c < CT.part.classes.size(); ++c)
      out << c << "\t" << CT.part.classes[c].size() << "\t"
          << G.labels[size_t(CT.part.representative[c])] << "\t"
          << join(glabels_of(G, CT.part.classes[c]), " ") << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  std::fputs(("wrote " + out_path + "\n").c_str(), stderr);
  return 0;
}

int run_group_subgroups(const std::string& spec, int max_count, const std::string& format) {
  Resolved r = resolve_spec(spec, "group");
  const hyperstab::FiniteGroup& G = need_group(r, "group");
  // Normal subgroups are exactly the subhypergroups of the class table.
  std::vector<hyperstab::SubhypergroupView> subs =
      hyperstab::enumerate_subhypergroups(*r.T, max_count);
  if (format == "json") {
    json j;
    j["group"] = G.name;
    j["order"] = G.order;
    j["count"] = int(subs.size());
    json rows = json::array();
    for (size_t i = 0; i < subs.size(); ++i) {
      json row;
      row["index"] = int(i);
      row["order"] = int(std::llround(subs[i].weight_sum));
      row["classes"] = subs[i].members;
      row["class_labels"] = labels_of(*r.T, subs[i].members);
      rows.push_back(row);
    }
    j["subgroups"] = rows;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# group " << G.name << " order " << G.order << " normal_subgroups "
        << subs.size() << "\n";
    out << "index\torder\tclasses\n";
    for (size_t i = 0; i < subs.size(); ++i)
      out << i << "\t" << std::llround(subs[i].weight_sum) << "\t"
          << join(subs[i].members, ",") << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// circuit subcommands

int run_circuit_validate(const std::string& file, const std::string& format) {
  hyperstab::CircuitFile cf = hyperstab::read_circuit_file(file);
  hyperstab::CircuitReport rep = hyperstab::validate_circuit(cf.circuit);
  if (format == "json") {
    json j;
    j["file"] = file;
    j["registers"] = cf.registers;
    j["gates"] = int(cf.circuit.gates.size());
    j["ok"] = rep.ok;
    j["final_tags"] = tag_strs(rep.final_tags);
    j["problems"] = rep.problems;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# circuit " << file << " registers " << cf.registers.size() << " gates "
        << cf.circuit.gates.size() << "\n";
    out << "ok\t" << (rep.ok ? "true" : "false") << "\n";
    out << "final_tags\t" << join(tag_strs(rep.final_tags), ",") << "\n";
    for (const std::string& p : rep.problems) out << "problem\t" << p << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return rep.ok ? 0 : 1;
}

int run_circuit_run(const std::string& file, int cap, double min_amp,
                    const std::string& format) {
  hyperstab::CircuitFile cf = hyperstab::read_circuit_file(file);
  hyperstab::DenseState st = hyperstab::simulate_dense(cf.circuit, cf.input, cap);
  std::vector<int> sizes;
  for (const auto& reg : cf.circuit.regs) sizes.push_back(reg.table->size);
  if (format == "json") {
    json j;
    j["file"] = file;
    j["dim"] = int(st.amps.size());
    j["tags"] = tag_strs(st.tags);
    json rows = json::array();
    for (int i = 0; i < st.amps.size(); ++i) {
      if (std::abs(st.amps[i]) <= min_amp) continue;
      json row;
      row["index"] = i;
      row["tuple"] = hyperstab::product_tuple(sizes, i);
      row["re"] = st.amps[i].real();
      row["im"] = st.amps[i].imag();
      rows.push_back(row);
    }
    j["amplitudes"] = rows;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# circuit " << file << " dim " << st.amps.size() << " tags "
        << join(tag_strs(st.tags), ",") << "\n";
    out << "index\ttuple\tamplitude\n";
    for (int i = 0; i < st.amps.size(); ++i) {
      if (std::abs(st.amps[i]) <= min_amp) continue;
      out << i << "\t" << join(hyperstab::product_tuple(sizes, i), ",") << "\t"
          << fmt_complex(st.amps[i]) << "\n";
    }
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

int run_circuit_sample(const std::string& file, long long shots, uint64_t seed, int jobs,
                       const std::string& format) {
  hyperstab::CircuitFile cf = hyperstab::read_circuit_file(file);
  hyperstab::ShotCounts sc = hyperstab::sample_outcomes(cf.circuit, cf.input, shots, seed, jobs);
  if (format == "json") {
    json j;
    j["file"] = file;
    j["shots"] = shots;
    j["seed"] = seed;
    j["tags"] = tag_strs(sc.tags);
    json rows = json::array();
    for (size_t i = 0; i < sc.outcomes.size(); ++i)
      rows.push_back(json{{"tuple", sc.outcomes[i]}, {"count", sc.counts[i]}});
    j["outcomes"] = rows;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# circuit " << file << " shots " << shots << " seed " << seed << " tags "
        << join(tag_strs(sc.tags), ",") << "\n";
    out << "tuple\tcount\n";
    for (size_t i = 0; i < sc.outcomes.size(); ++i)
      out << join(sc.outcomes[i], ",") << "\t" << sc.counts[i] << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

int run_circuit_normalform(const std::string& file, const std::string& format) {
  hyperstab::CircuitFile cf = hyperstab::read_circuit_file(file);
  hyperstab::NormalForm nf = hyperstab::normal_form(cf.circuit);
  if (format == "json") {
    json j;
    j["file"] = file;
    j["has_qft"] = nf.has_qft;
    j["final_tags"] = tag_strs(nf.final_tags);
    json rows = json::array();
    for (const hyperstab::PauliTerm& t : nf.paulis) {
      json row;
      row["side"] = side_str(t.side);
      row["kind"] = t.kind == hyperstab::PKind::X ? "X" : "Z";
      row["param"] = t.param;
      row["phase"] = fmt_complex(t.phase);
      rows.push_back(row);
    }
    j["paulis"] = rows;
    j["perm"] = nf.perm;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# circuit " << file << "\n";
    out << "has_qft\t" << (nf.has_qft ? "true" : "false") << "\n";
    out << "final_tags\t" << join(tag_strs(nf.final_tags), ",") << "\n";
    for (const hyperstab::PauliTerm& t : nf.paulis)
      out << "pauli\t" << side_str(t.side) << "\t"
          << (t.kind == hyperstab::PKind::X ? "X" : "Z") << "\t" << t.param << "\t"
          << fmt_complex(t.phase) << "\n";
    out << "perm\t" << join(nf.perm, ",") << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// hshp subcommands

json trace_json(const hyperstab::AlgorithmTrace& tr, const Resolved& r) {
  json j;
  j["seed"] = tr.seed;
  j["oracle_calls"] = tr.oracle_calls;
  j["levels"] = int(tr.spaces.size());
  j["answer"] = tr.answer;
  j["answer_labels"] = labels_of(*r.T, tr.answer);
  if (r.G && !tr.answer_elements.empty())
    j["answer_elements"] = glabels_of(*r.G, tr.answer_elements);
  json rounds = json::array();
  for (const hyperstab::RoundRecord& rr : tr.rounds)
    rounds.push_back(json{{"space", rr.space},
                          {"level", rr.level},
                          {"sample", rr.sample},
                          {"trivial", rr.sample == rr.trivial}});
  j["rounds"] = rounds;
  return j;
}

int run_hshp_akr(const std::string& group, const std::string& oracle, int samples,
                 uint64_t seed, int runs, int jobs, const std::string& format) {
  Resolved r = resolve_spec(group, "--group");
  std::function<int(int)> fn = make_class_oracle(r, oracle);
  std::vector<hyperstab::AlgorithmTrace> traces = hyperstab::seeded_sweep(
      runs, seed, jobs, [&](uint64_t s) { return hyperstab::akr_run(*r.T, *r.C, fn, samples, s); });
  if (format == "json") {
    json j;
    j["group"] = r.name;
    j["oracle"] = oracle;
    j["samples"] = samples;
    j["seed"] = seed;
    j["runs"] = runs;
    json rows = json::array();
    for (const auto& tr : traces) rows.push_back(trace_json(tr, r));
    j["results"] = rows;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# akr group " << r.name << " oracle " << oracle << " samples " << samples
        << " seed " << seed << " runs " << runs << "\n";
    out << "run\tseed\trounds\toracle_calls\tanswer\n";
    for (size_t i = 0; i < traces.size(); ++i)
      out << i << "\t" << traces[i].seed << "\t" << traces[i].rounds.size() << "\t"
          << traces[i].oracle_calls << "\t" << join(labels_of(*r.T, traces[i].answer), " ")
          << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

int run_hshp_nilpotent(const std::string& group, const std::string& oracle, int repeats,
                       uint64_t seed, const std::vector<std::string>& factors, bool shot_mode,
                       int runs, int jobs, const std::string& format) {
  Resolved r = resolve_spec(group, "--group");
  const hyperstab::FiniteGroup& G = need_group(r, "--group");
  std::function<int(int)> fn = make_class_oracle(r, oracle);
  std::vector<std::vector<int>> decomposition;
  for (const std::string& f : factors) {
    std::vector<int> elems;
    for (const std::string& tok : split_commas(f))
      elems.push_back(resolve_element_token(r, tok, "--factor"));
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    decomposition.push_back(std::move(elems));
  }
  std::vector<hyperstab::AlgorithmTrace> traces =
      hyperstab::seeded_sweep(runs, seed, jobs, [&](uint64_t s) {
        return hyperstab::nilpotent_run(G, *r.CT, *r.C, fn, repeats, s, decomposition,
                                        shot_mode);
      });
  if (format == "json") {
    json j;
    j["group"] = r.name;
    j["oracle"] = oracle;
    j["repeats_per_round"] = repeats;
    j["seed"] = seed;
    j["runs"] = runs;
    j["shot_mode"] = shot_mode;
    json rows = json::array();
    for (const auto& tr : traces) rows.push_back(trace_json(tr, r));
    j["results"] = rows;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# nilpotent group " << r.name << " oracle " << oracle << " repeats " << repeats
        << " seed " << seed << " runs " << runs << (shot_mode ? " shot_mode" : "") << "\n";
    out << "run\tseed\tlevels\trounds\toracle_calls\tanswer\telements\n";
    for (size_t i = 0; i < traces.size(); ++i)
      out << i << "\t" << traces[i].seed << "\t" << traces[i].spaces.size() << "\t"
          << traces[i].rounds.size() << "\t" << traces[i].oracle_calls << "\t"
          << join(labels_of(*r.T, traces[i].answer), " ") << "\t"
          << join(glabels_of(G, traces[i].answer_elements), " ") << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

int run_hshp_recursive(const std::string& group, const std::string& oracle, int samples,
                       uint64_t seed, int runs, int jobs, const std::string& format) {
  Resolved r = resolve_spec(group, "--group");
  const hyperstab::FiniteGroup& G = need_group(r, "--group");
  hyperstab::OracleFactory factory = make_oracle_factory(r, oracle);
  std::vector<hyperstab::AlgorithmTrace> traces =
      hyperstab::seeded_sweep(runs, seed, jobs, [&](uint64_t s) {
        return hyperstab::recursive_subgroup_run(G, factory, samples, s);
      });
  if (format == "json") {
    json j;
    j["group"] = r.name;
    j["oracle"] = oracle;
    j["samples_per_level"] = samples;
    j["seed"] = seed;
    j["runs"] = runs;
    json rows = json::array();
    for (const auto& tr : traces) rows.push_back(trace_json(tr, r));
    j["results"] = rows;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# recursive group " << r.name << " oracle " << oracle << " samples " << samples
        << " seed " << seed << " runs " << runs << "\n";
    out << "run\tseed\tlevels\toracle_calls\tanswer\telements\n";
    for (size_t i = 0; i < traces.size(); ++i)
      out << i << "\t" << traces[i].seed << "\t" << traces[i].spaces.size() << "\t"
          << traces[i].oracle_calls << "\t" << join(labels_of(*r.T, traces[i].answer), " ")
          << "\t" << join(glabels_of(G, traces[i].answer_elements), " ") << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

int run_hshp_dist(const std::string& group, const std::string& hidden,
                  const std::string& format) {
  Resolved r = resolve_spec(group, "--group");
  std::vector<int> seed;
  for (const std::string& tok : split_commas(hidden))
    seed.push_back(resolve_class_token(r, tok, "--hidden"));
  hyperstab::SubhypergroupView N = hyperstab::closure(*r.T, seed);
  hyperstab::OutcomeDistribution d = hyperstab::akr_distribution(*r.T, *r.C, N);
  double W = r.T->total_weight;
  double den = std::round(W) == W ? W * W : 0;  // squared weight, when integral
  if (format == "json") {
    json j;
    j["group"] = r.name;
    j["hidden_classes"] = N.members;
    j["hidden_labels"] = labels_of(*r.T, N.members);
    j["total_weight"] = W;
    j["trivial"] = d.trivial;
    json rows = json::array();
    for (size_t mu = 0; mu < d.prob.size(); ++mu) {
      json row;
      row["char"] = int(mu);
      row["weight"] = r.C->char_weight[mu];
      row["probability"] = d.prob[mu];
      row["exact"] = maybe_rational(d.prob[mu], den);
      rows.push_back(row);
    }
    j["distribution"] = rows;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# group " << r.name << " hidden " << join(labels_of(*r.T, N.members), " ")
        << " total_weight " << fmt12(W) << " trivial_char " << d.trivial << "\n";
    out << "# columns: char weight probability\n";
    for (size_t mu = 0; mu < d.prob.size(); ++mu)
      out << mu << "\t" << fmt12(r.C->char_weight[mu]) << "\t"
          << maybe_rational(d.prob[mu], den) << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

int run_hshp_checks(const std::string& format) {
  hyperstab::DihedralAffineReport rep = hyperstab::dihedral_and_affine_checks();
  // Denominator for exact rows: squared subhypergroup weight.
  auto row_den = [](const hyperstab::SubhypergroupCheck& c) {
    const hyperstab::HypergroupTable& T = hyperstab::catalog_hypergroup(c.hypergroup);
    double wk = 0;
    for (int m : c.members) wk += T.weight[size_t(m)];
    return wk * wk;
  };
  bool affine_ok = true;
  for (const auto& c : rep.affine)
    if (c.bound_applies) affine_ok = affine_ok && c.trivial_prob > 2.0 / 3.0;
  bool ok = rep.dihedral_ok && affine_ok;
  if (format == "json") {
    json j;
    auto rows = [&](const std::vector<hyperstab::SubhypergroupCheck>& v) {
      json arr = json::array();
      for (const auto& c : v)
        arr.push_back(json{{"hypergroup", c.hypergroup},
                           {"members", c.members},
                           {"trivial_prob", c.trivial_prob},
                           {"exact", maybe_rational(c.trivial_prob, row_den(c))},
                           {"bound_applies", c.bound_applies}});
      return arr;
    };
    j["dihedral"] = rows(rep.dihedral);
    j["dihedral_max"] = rep.dihedral_max;
    j["dihedral_ok"] = rep.dihedral_ok;
    j["affine"] = rows(rep.affine);
    j["affine_exceeds_bound"] = affine_ok;
    j["ok"] = ok;
    print_json(j);
  } else {
    std::ostringstream out;
    out << "# trivial-outcome probability sweep; dihedral rows obey <= 2/3, affine rows "
           "exceed it\n";
    out << "family\thypergroup\tmembers\ttrivial_prob\texact\n";
    for (const auto& c : rep.dihedral)
      out << "dihedral\t" << c.hypergroup << "\t" << join(c.members, ",") << "\t"
          << fmt12(c.trivial_prob) << "\t" << maybe_rational(c.trivial_prob, row_den(c))
          << "\n";
    for (const auto& c : rep.affine)
      out << "affine\t" << c.hypergroup << "\t" << join(c.members, ",") << "\t"
          << fmt12(c.trivial_prob) << "\t" << maybe_rational(c.trivial_prob, row_den(c))
          << "\n";
    out << "dihedral_max\t" << fmt12(rep.dihedral_max) << "\n";
    out << "dihedral_ok\t" << (rep.dihedral_ok ? "true" : "false") << "\n";
    out << "affine_exceeds_bound\t" << (affine_ok ? "true" : "false") << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return ok ? 0 : 1;
}

int run_catalog(const std::string& format) {
  std::vector<hyperstab::CatalogEntry> entries = hyperstab::catalog_list();
  if (format == "json") {
    json rows = json::array();
    for (const auto& e : entries)
      rows.push_back(json{{"name", e.name}, {"kind", e.kind}, {"size", e.size}});
    print_json(json{{"catalog", rows}});
  } else {
    std::ostringstream out;
    out << "name\tkind\tsize\n";
    for (const auto& e : entries)
      out << e.name << "\t" << e.kind << "\t" << e.size << "\n";
    std::fputs(out.str().c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite abelian hypergroups, normalizer circuits, and hidden-subhypergroup "
               "sampling"};
  app.require_subcommand(1);

  std::function<int()> action;
  auto formats = CLI::IsMember({"tsv", "json"});

  // hg ----------------------------------------------------------------------
  CLI::App* hg = app.add_subcommand("hg", "hypergroup tables: validate, characters, dual");
  hg->require_subcommand(1);
  {
    auto* c = hg->add_subcommand("validate", "check the hypergroup axioms of a table file");
    auto file = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("file", *file, "hypergroup file")->required();
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, file, format] {
      action = [=] { return run_hg_validate(*file, *format); };
    });
  }
  {
    auto* c = hg->add_subcommand("chars", "print the character table");
    auto spec = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("table", *spec, "hypergroup file or catalog name")->required();
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, spec, format] {
      action = [=] { return run_hg_chars(*spec, *format); };
    });
  }
  {
    auto* c = hg->add_subcommand("dual", "emit the dual hypergroup as a table file");
    auto spec = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("hg");
    c->add_option("table", *spec, "hypergroup file or catalog name")->required();
    c->add_option("--format", *format, "hg (a re-parsable file) or json")
        ->check(CLI::IsMember({"hg", "json"}));
    c->callback([&action, spec, format] {
      action = [=] { return run_hg_dual(*spec, *format); };
    });
  }

  // group -------------------------------------------------------------------
  CLI::App* gr = app.add_subcommand("group", "finite groups: classes, normal subgroups");
  gr->require_subcommand(1);
  {
    auto* c = gr->add_subcommand("classes",
                                 "print conjugacy classes and write the class hypergroup");
    auto spec = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("group", *spec, "group file or catalog name")->required();
    c->add_option("--out", *out, "class hypergroup output path (default <name>-classes.hg)");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, spec, out, format] {
      action = [=] { return run_group_classes(*spec, *out, *format); };
    });
  }
  {
    auto* c = gr->add_subcommand("subgroups", "list normal subgroups via the class table");
    auto spec = std::make_shared<std::string>();
    auto max_count = std::make_shared<int>(512);
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("group", *spec, "group file or catalog name")->required();
    c->add_option("--max", *max_count, "enumeration cap (default 512)");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, spec, max_count, format] {
      action = [=] { return run_group_subgroups(*spec, *max_count, *format); };
    });
  }

  // circuit -----------------------------------------------------------------
  CLI::App* ci = app.add_subcommand("circuit", "normalizer circuits: validate, run, sample");
  ci->require_subcommand(1);
  {
    auto* c = ci->add_subcommand("validate", "static checks of a circuit file");
    auto file = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("file", *file, "circuit file")->required();
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, file, format] {
      action = [=] { return run_circuit_validate(*file, *format); };
    });
  }
  {
    auto* c = ci->add_subcommand("run", "dense simulation: print the final state");
    auto file = std::make_shared<std::string>();
    auto cap = std::make_shared<int>(4096);
    auto min_amp = std::make_shared<double>(1e-12);
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("file", *file, "circuit file")->required();
    c->add_option("--cap", *cap, "product-dimension cap (default 4096)");
    c->add_option("--min-amp", *min_amp, "suppress amplitudes at or below this (default 1e-12)");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, file, cap, min_amp, format] {
      action = [=] { return run_circuit_run(*file, *cap, *min_amp, *format); };
    });
  }
  {
    auto* c = ci->add_subcommand("sample", "draw measurement outcomes");
    auto file = std::make_shared<std::string>();
    auto shots = std::make_shared<long long>(0);
    auto seed = std::make_shared<uint64_t>(0);
    auto jobs = std::make_shared<int>(1);
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("file", *file, "circuit file")->required();
    c->add_option("--shots", *shots, "number of samples")->required();
    c->add_option("--seed", *seed, "RNG seed (default 0)");
    c->add_option("--jobs", *jobs, "parallel workers (default 1)");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, file, shots, seed, jobs, format] {
      action = [=] { return run_circuit_sample(*file, *shots, *seed, *jobs, *format); };
    });
  }
  {
    auto* c = ci->add_subcommand("normalform", "Pauli x automorphism x QFT layering");
    auto file = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("file", *file, "circuit file")->required();
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, file, format] {
      action = [=] { return run_circuit_normalform(*file, *format); };
    });
  }

  // hshp --------------------------------------------------------------------
  CLI::App* hs = app.add_subcommand("hshp", "hidden-subhypergroup sampling runs");
  hs->require_subcommand(1);
  {
    auto* c = hs->add_subcommand("akr", "full-space Fourier sampling with kernel intersection");
    auto group = std::make_shared<std::string>();
    auto oracle = std::make_shared<std::string>();
    auto samples = std::make_shared<int>(0);
    auto seed = std::make_shared<uint64_t>(0);
    auto runs = std::make_shared<int>(1);
    auto jobs = std::make_shared<int>(1);
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("--group", *group, "group/hypergroup file or catalog name")->required();
    c->add_option("--oracle", *oracle, "trivial | identity | coset:<classes> | file:<path>")
        ->required();
    c->add_option("--samples", *samples, "characters to sample per run")->required();
    c->add_option("--seed", *seed, "base seed (run i uses seed+i)");
    c->add_option("--runs", *runs, "independent runs (default 1)");
    c->add_option("--jobs", *jobs, "parallel workers (default 1)");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, group, oracle, samples, seed, runs, jobs, format] {
      action = [=] {
        return run_hshp_akr(*group, *oracle, *samples, *seed, *runs, *jobs, *format);
      };
    });
  }
  {
    auto* c = hs->add_subcommand("nilpotent", "adaptive descent for nilpotent groups");
    auto group = std::make_shared<std::string>();
    auto oracle = std::make_shared<std::string>();
    auto repeats = std::make_shared<int>(20);
    auto seed = std::make_shared<uint64_t>(0);
    auto factors = std::make_shared<std::vector<std::string>>();
    auto shot_mode = std::make_shared<bool>(false);
    auto runs = std::make_shared<int>(1);
    auto jobs = std::make_shared<int>(1);
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("--group", *group, "group file or catalog name")->required();
    c->add_option("--oracle", *oracle, "trivial | identity | coset:<classes> | file:<path>")
        ->required();
    c->add_option("--repeats,--samples", *repeats,
                  "consecutive trivial samples that end a level (default 20)");
    c->add_option("--seed", *seed, "base seed (run i uses seed+i)");
    c->add_option("--factor", *factors,
                  "direct-factor element list (repeatable; one p-group per prime)");
    c->add_flag("--shot-mode", *shot_mode, "sample coset-then-character instead of the mixture");
    c->add_option("--runs", *runs, "independent runs (default 1)");
    c->add_option("--jobs", *jobs, "parallel workers (default 1)");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, group, oracle, repeats, seed, factors, shot_mode, runs, jobs,
                 format] {
      action = [=] {
        return run_hshp_nilpotent(*group, *oracle, *repeats, *seed, *factors, *shot_mode,
                                  *runs, *jobs, *format);
      };
    });
  }
  {
    auto* c = hs->add_subcommand("recursive", "recursive descent through subgroup structure");
    auto group = std::make_shared<std::string>();
    auto oracle = std::make_shared<std::string>();
    auto samples = std::make_shared<int>(0);
    auto seed = std::make_shared<uint64_t>(0);
    auto runs = std::make_shared<int>(1);
    auto jobs = std::make_shared<int>(1);
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("--group", *group, "group file or catalog name")->required();
    c->add_option("--oracle", *oracle, "identity | constant | elements:<members>")->required();
    c->add_option("--samples", *samples, "samples per level")->required();
    c->add_option("--seed", *seed, "base seed (run i uses seed+i)");
    c->add_option("--runs", *runs, "independent runs (default 1)");
    c->add_option("--jobs", *jobs, "parallel workers (default 1)");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, group, oracle, samples, seed, runs, jobs, format] {
      action = [=] {
        return run_hshp_recursive(*group, *oracle, *samples, *seed, *runs, *jobs, *format);
      };
    });
  }
  {
    auto* c = hs->add_subcommand("dist", "analytic one-round outcome distribution");
    auto group = std::make_shared<std::string>();
    auto hidden = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("--group", *group, "group/hypergroup file or catalog name")->required();
    c->add_option("--hidden", *hidden, "hidden subhypergroup classes (comma list; closed)")
        ->required();
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, group, hidden, format] {
      action = [=] { return run_hshp_dist(*group, *hidden, *format); };
    });
  }
  {
    auto* c = hs->add_subcommand("checks", "dihedral 2/3 bound and affine failure rows");
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, format] {
      action = [=] { return run_hshp_checks(*format); };
    });
  }

  // catalog -----------------------------------------------------------------
  {
    auto* c = app.add_subcommand("catalog", "list built-in groups and hypergroups");
    auto format = std::make_shared<std::string>("tsv");
    c->add_option("--format", *format, "tsv or json")->check(formats);
    c->callback([&action, format] {
      action = [=] { return run_catalog(*format); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends: exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the offending flag to stderr
    return 2;
  }

  if (!action) {
    std::cerr << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.flag << ": " << e.msg << "\n";
    return 2;
  } catch (const hyperstab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
