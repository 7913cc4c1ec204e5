// Text formats for hypergroups, groups, and circuits.

#include "hyperstab/io.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hyperstab/catalog.h"
#include "hyperstab/rational.h"

namespace hyperstab {
namespace {

// Tokenized non-empty lines, comments stripped.
std::vector<std::vector<std::string>> tokenize(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

int parse_int(const std::string& t, const char* what) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(t, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != t.size()) throw Error("Malformed", std::string(what) + ": not an integer: " + t);
  return v;
}

double parse_double(const std::string& t, const char* what) {
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw Error("Malformed", std::string(what) + ": not a number: " + t);
  return v;
}

std::string dir_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string stem_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

bool file_exists(const std::string& path) {
  std::ifstream f(path);
  return f.good();
}

// Absolute tokens stand alone; everything else is relative to `dir`.
std::string resolve_path(const std::string& dir, const std::string& tok) {
  if (!tok.empty() && tok[0] == '/') return tok;
  return dir + "/" + tok;
}

std::vector<int> parse_reg_list(const std::string& tok) {
  std::vector<int> regs;
  std::string cur;
  std::istringstream in(tok);
  while (std::getline(in, cur, ','))
    regs.push_back(parse_int(cur, "register list"));
  if (regs.empty()) throw Error("Malformed", "empty register list");
  return regs;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("Io", "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("Io", "cannot write " + path);
  out << text;
  if (!out.flush()) throw Error("Io", "cannot write " + path);
}

std::string hypergroup_to_text(const HypergroupTable& T) {
  std::ostringstream out;
  out << "hypergroup " << (T.name.empty() ? "unnamed" : T.name) << " " << T.size << "\n";
  out << "identity " << T.identity << "\n";
  out << "involution";
  for (int v : T.involution) out << " " << v;
  out << "\n";
  for (int a = 0; a < T.size; ++a)
    for (int b = 0; b < T.size; ++b)
      for (const Term& t : T.pairs(a, b)) {
        out << "n " << a << " " << b << " " << t.c << " ";
        if (T.exact)
          out << t.r.str();
        else
          out << format_double(t.v);
        out << "\n";
      }
  return out.str();
}

HypergroupTable parse_hypergroup_text(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0][0] != "hypergroup" || lines[0].size() != 3)
    throw Error("Malformed", "expected header: hypergroup <name> <size>");
  std::string name = lines[0][1];
  int size = parse_int(lines[0][2], "size");
  int identity = -1;
  std::vector<int> involution;
  std::vector<Triple> triples;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto& L = lines[i];
    if (L[0] == "identity") {
      if (L.size() != 2) throw Error("Malformed", "identity line needs one index");
      identity = parse_int(L[1], "identity");
    } else if (L[0] == "involution") {
      for (size_t k = 1; k < L.size(); ++k)
        involution.push_back(parse_int(L[k], "involution"));
    } else if (L[0] == "n") {
      if (L.size() != 5) throw Error("Malformed", "expected: n a b c value");
      Triple t;
      t.a = parse_int(L[1], "a");
      t.b = parse_int(L[2], "b");
      t.c = parse_int(L[3], "c");
      Rat r;
      double approx = 0;
      bool exact = false;
      if (!parse_rational(L[4], &r, &approx, &exact))
        throw Error("Malformed", "bad structure constant value: " + L[4]);
      t.exact = exact;
      t.r = exact ? r : Rat();
      t.v = exact ? r.to_double() : approx;
      triples.push_back(t);
    } else {
      throw Error("Malformed", "unknown hypergroup-file keyword: " + L[0]);
    }
  }
  return make_hypergroup(name, size, triples, identity, std::move(involution));
}

HypergroupTable read_hypergroup_file(const std::string& path) {
  return parse_hypergroup_text(read_text_file(path));
}

std::string group_to_text(const FiniteGroup& G) {
  std::ostringstream out;
  out << "group " << (G.name.empty() ? "unnamed" : G.name) << " " << G.order << "\n";
  for (int a = 0; a < G.order; ++a) {
    for (int b = 0; b < G.order; ++b) out << (b ? " " : "") << G.mul(a, b);
    out << "\n";
  }
  return out.str();
}

FiniteGroup parse_group_text(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0][0] != "group" || lines[0].size() != 3)
    throw Error("Malformed", "expected header: group <name> <order>");
  std::string name = lines[0][1];
  int order = parse_int(lines[0][2], "order");
  if (order <= 0) throw Error("Malformed", "group order must be positive");
  std::vector<int> table;
  table.reserve(size_t(order) * order);
  for (size_t i = 1; i < lines.size(); ++i)
    for (const std::string& t : lines[i]) table.push_back(parse_int(t, "table entry"));
  if (int64_t(table.size()) != int64_t(order) * order)
    throw Error("Malformed", "multiplication table has " + std::to_string(table.size()) +
                                 " entries, expected " + std::to_string(order * order));
  return group_from_table(name, order, std::move(table));
}

FiniteGroup read_group_file(const std::string& path) {
  return parse_group_text(read_text_file(path));
}

std::string index_map_to_text(const std::vector<int>& map) {
  std::ostringstream out;
  out << "map " << map.size() << "\n";
  for (size_t i = 0; i < map.size(); ++i)
    out << map[i] << ((i + 1) % 16 == 0 || i + 1 == map.size() ? "\n" : " ");
  return out.str();
}

std::vector<int> parse_index_map_text(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0][0] != "map" || lines[0].size() != 2)
    throw Error("Malformed", "expected header: map <n>");
  size_t n = size_t(parse_int(lines[0][1], "map size"));
  std::vector<int> map;
  for (size_t i = 1; i < lines.size(); ++i)
    for (const std::string& t : lines[i]) map.push_back(parse_int(t, "map entry"));
  if (map.size() != n)
    throw Error("Malformed", "map has " + std::to_string(map.size()) + " entries, expected " +
                                 std::to_string(n));
  return map;
}

std::string phase_table_to_text(const std::vector<complex>& xi) {
  std::ostringstream out;
  out << "xi " << xi.size() << "\n";
  for (const complex& z : xi)
    out << format_double(z.real()) << " " << format_double(z.imag()) << "\n";
  return out.str();
}

std::vector<complex> parse_phase_table_text(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0][0] != "xi" || lines[0].size() != 2)
    throw Error("Malformed", "expected header: xi <n>");
  size_t n = size_t(parse_int(lines[0][1], "xi size"));
  std::vector<double> nums;
  for (size_t i = 1; i < lines.size(); ++i)
    for (const std::string& t : lines[i]) nums.push_back(parse_double(t, "xi entry"));
  if (nums.size() != 2 * n)
    throw Error("Malformed", "xi table has " + std::to_string(nums.size()) +
                                 " numbers, expected " + std::to_string(2 * n));
  std::vector<complex> xi(n);
  for (size_t i = 0; i < n; ++i) xi[i] = complex(nums[2 * i], nums[2 * i + 1]);
  return xi;
}

CircuitFile parse_circuit_text(const std::string& text, const std::string& dir) {
  auto lines = tokenize(text);
  if (lines.empty() || lines[0][0] != "circuit")
    throw Error("Malformed", "expected header: circuit");
  CircuitFile cf;
  bool have_regs = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto& L = lines[i];
    if (L[0] == "registers") {
      if (L.size() < 2) throw Error("Malformed", "registers line needs at least one token");
      for (size_t k = 1; k < L.size(); ++k) {
        const std::string& tok = L[k];
        cf.registers.push_back(tok);
        Register r;
        std::string path = resolve_path(dir, tok);
        if (file_exists(path)) {
          cf.owned_tables.push_back(
              std::make_unique<HypergroupTable>(read_hypergroup_file(path)));
          cf.owned_chars.push_back(
              std::make_unique<CharacterTable>(compute_characters(*cf.owned_tables.back())));
          r.table = cf.owned_tables.back().get();
          r.chars = cf.owned_chars.back().get();
        } else if (catalog_has_hypergroup(tok)) {
          r.table = &catalog_hypergroup(tok);
          r.chars = &catalog_characters(tok);
        } else {
          throw Error("NoMatch", "register " + tok + ": no such file or catalog hypergroup");
        }
        cf.circuit.regs.push_back(r);
      }
      have_regs = true;
    } else if (L[0] == "input") {
      if (!have_regs) throw Error("Malformed", "input line before registers");
      size_t n = cf.circuit.regs.size();
      if (L.size() != 2 + n)
        throw Error("Malformed", "input line needs a basis token and one index per register");
      std::vector<std::string> basis;
      std::istringstream bs(L[1]);
      std::string tok;
      while (std::getline(bs, tok, ',')) basis.push_back(tok);
      if (basis.size() != 1 && basis.size() != n)
        throw Error("Malformed", "basis token must be one keyword or one per register");
      cf.circuit.initial_tags.clear();
      for (size_t r = 0; r < n; ++r) {
        const std::string& b = basis[basis.size() == 1 ? 0 : r];
        if (b == "elem")
          cf.circuit.initial_tags.push_back(Side::Elem);
        else if (b == "char")
          cf.circuit.initial_tags.push_back(Side::Char);
        else
          throw Error("Malformed", "basis must be elem or char, got " + b);
        cf.input.push_back(parse_int(L[2 + r], "input index"));
      }
    } else if (L[0] == "qft") {
      if (L.size() != 1) throw Error("Malformed", "qft takes no arguments");
      cf.circuit.gates.push_back(gate_qft());
    } else if (L[0] == "pqft") {
      if (L.size() != 2) throw Error("Malformed", "expected: pqft <reg>");
      cf.circuit.gates.push_back(gate_pqft(parse_int(L[1], "pqft register")));
    } else if (L[0] == "px" || L[0] == "pz") {
      if (L.size() != 3) throw Error("Malformed", "expected: " + L[0] + " <reg> <param>");
      int reg = parse_int(L[1], "register");
      int param = parse_int(L[2], "parameter");
      cf.circuit.gates.push_back(L[0] == "px" ? gate_px(reg, param) : gate_pz(reg, param));
    } else if (L[0] == "auto" || L[0] == "quad") {
      if (L.size() != 3) throw Error("Malformed", "expected: " + L[0] + " <regs> <file>");
      std::vector<int> regs = parse_reg_list(L[1]);
      std::string path = resolve_path(dir, L[2]);
      if (L[0] == "auto")
        cf.circuit.gates.push_back(
            gate_auto(std::move(regs), parse_index_map_text(read_text_file(path))));
      else
        cf.circuit.gates.push_back(
            gate_quad(std::move(regs), parse_phase_table_text(read_text_file(path))));
    } else {
      throw Error("Malformed", "unknown circuit-file keyword: " + L[0]);
    }
  }
  if (!have_regs) throw Error("Malformed", "circuit file has no registers line");
  if (cf.input.empty())
    throw Error("Malformed", "circuit file has no input line");
  return cf;
}

CircuitFile read_circuit_file(const std::string& path) {
  return parse_circuit_text(read_text_file(path), dir_of(path));
}

void write_circuit_file(const std::string& path, const Circuit& c,
                        const std::vector<int>& input,
                        const std::vector<std::string>& names) {
  if (names.size() != c.regs.size())
    throw Error("Malformed", "one register token per register is required");
  if (input.size() != c.regs.size() || c.initial_tags.size() != c.regs.size())
    throw Error("Malformed", "input and tags must cover every register");
  const std::string dir = dir_of(path);
  const std::string stem = stem_of(path);
  std::ostringstream out;
  out << "circuit\n";
  out << "registers";
  for (const std::string& n : names) out << " " << n;
  out << "\n";
  bool mixed = false;
  for (Side s : c.initial_tags) mixed = mixed || s != c.initial_tags[0];
  out << "input ";
  if (!mixed) {
    out << (c.initial_tags[0] == Side::Elem ? "elem" : "char");
  } else {
    for (size_t r = 0; r < c.initial_tags.size(); ++r)
      out << (r ? "," : "") << (c.initial_tags[r] == Side::Elem ? "elem" : "char");
  }
  for (int v : input) out << " " << v;
  out << "\n";
  for (size_t k = 0; k < c.gates.size(); ++k) {
    const CircuitGate& g = c.gates[k];
    switch (g.kind) {
      case CGate::QFT:
        out << "qft\n";
        break;
      case CGate::PartialQFT:
        out << "pqft " << g.regs.at(0) << "\n";
        break;
      case CGate::PauliX:
        out << "px " << g.regs.at(0) << " " << g.param << "\n";
        break;
      case CGate::PauliZ:
        out << "pz " << g.regs.at(0) << " " << g.param << "\n";
        break;
      case CGate::Automorphism: {
        std::string side = stem + "-g" + std::to_string(k) + ".map";
        write_text_file(dir + "/" + side, index_map_to_text(g.map));
        out << "auto ";
        for (size_t i = 0; i < g.regs.size(); ++i) out << (i ? "," : "") << g.regs[i];
        out << " " << side << "\n";
        break;
      }
      case CGate::Quadratic: {
        std::string side = stem + "-g" + std::to_string(k) + ".xi";
        write_text_file(dir + "/" + side, phase_table_to_text(g.xi));
        out << "quad ";
        for (size_t i = 0; i < g.regs.size(); ++i) out << (i ? "," : "") << g.regs[i];
        out << " " << side << "\n";
        break;
      }
    }
  }
  write_text_file(path, out.str());
}

}  // namespace hyperstab
