#pragma once
// Built-in groups and hypergroups, constructed on demand and cached for the
// life of the process.  Group names: z1..z64, z2xz2, s3, s4, d4..d32 (even
// orders), q8, heisenberg{3,5,7,31}, affine{5,7,13}, z3xz3, z3xq8.
// Hypergroup names: any abelian group name used directly, conj-<group>, and
// the tensor powers conj-q8-2 / conj-q8-3.

#include <string>
#include <vector>

#include "hyperstab/characters.h"
#include "hyperstab/group.h"

namespace hyperstab {

struct CatalogEntry {
  std::string name;
  std::string kind;  // "group" or "hypergroup"
  int size = 0;      // order / carrier size
};

// Registered names.  The hypergroup rows double as the sweep set for
// catalog-wide property checks, so conj-heisenberg31 (order-4 dual workloads
// are far past desk scale at 991 classes) is constructible by name but not
// listed.
std::vector<CatalogEntry> catalog_list();

bool catalog_has_group(const std::string& name);
bool catalog_has_hypergroup(const std::string& name);

const FiniteGroup& catalog_group(const std::string& name);            // Error("NoMatch")
const ClassTable& catalog_class_table(const std::string& group_name); // classes + table
const HypergroupTable& catalog_hypergroup(const std::string& name);   // Error("NoMatch")
const CharacterTable& catalog_characters(const std::string& name);    // cached characters

}  // namespace hyperstab
