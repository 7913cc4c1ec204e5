#pragma once
// Line-oriented text formats for hypergroup, group, and circuit files.
//
// Parsers skip blank lines and #-comments.  Emitters write values that
// re-parse to equal objects: exact structure constants as p/q rationals,
// inexact ones at full round-trip precision.  Circuit register tokens
// resolve as file paths relative to the circuit file's directory first and
// as catalog hypergroup names second.

#include <memory>
#include <string>
#include <vector>

#include "hyperstab/circuit.h"
#include "hyperstab/group.h"
#include "hyperstab/hypergroup.h"

namespace hyperstab {

// Shortest decimal text that strtod parses back to exactly v.
std::string format_double(double v);

std::string read_text_file(const std::string& path);  // throws Error("Io")
void write_text_file(const std::string& path, const std::string& text);

// hypergroup <name> <size>
// identity <idx>
// involution i0 i1 ...
// n a b c <value>          (value: integer, p/q, or decimal; absent = zero)
std::string hypergroup_to_text(const HypergroupTable& T);
HypergroupTable parse_hypergroup_text(const std::string& text);
HypergroupTable read_hypergroup_file(const std::string& path);

// group <name> <order> followed by the multiplication table, one row per
// left factor.
std::string group_to_text(const FiniteGroup& G);
FiniteGroup parse_group_text(const std::string& text);
FiniteGroup read_group_file(const std::string& path);

// map <n> followed by n image indices (an automorphism of a product basis).
std::string index_map_to_text(const std::vector<int>& map);
std::vector<int> parse_index_map_text(const std::string& text);

// xi <n> followed by n lines "re im" (a diagonal phase table).
std::string phase_table_to_text(const std::vector<complex>& xi);
std::vector<complex> parse_phase_table_text(const std::string& text);

// circuit
// registers <hg-file-or-catalog-name> ...
// input <basis> <idx> ...   (basis: elem | char | per-register comma list)
// qft | pqft <reg> | px <reg> <elem> | pz <reg> <char>
// auto <regs> <mapfile> | quad <regs> <xifile>    (regs: comma list)
struct CircuitFile {
  Circuit circuit;
  std::vector<int> input;              // one basis label per register
  std::vector<std::string> registers;  // register tokens as written
  // Storage for registers loaded from .hg files (catalog registers point at
  // the process-lifetime catalog cache instead).
  std::vector<std::unique_ptr<HypergroupTable>> owned_tables;
  std::vector<std::unique_ptr<CharacterTable>> owned_chars;
};

CircuitFile parse_circuit_text(const std::string& text, const std::string& dir);
CircuitFile read_circuit_file(const std::string& path);

// Writes the circuit file at `path` plus one sidecar file per automorphism
// or quadratic gate (<stem>-g<k>.map / .xi, referenced by basename).
// `names` supplies the register tokens and must resolve when re-read, e.g.
// catalog names or paths of .hg files the caller has written.
void write_circuit_file(const std::string& path, const Circuit& c,
                        const std::vector<int>& input,
                        const std::vector<std::string>& names);

}  // namespace hyperstab
