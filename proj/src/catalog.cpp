#include "hyperstab/catalog.h"

#include <map>
#include <mutex>

namespace hyperstab {

namespace {

std::recursive_mutex cat_mutex;
std::map<std::string, FiniteGroup>& group_cache() {
  static std::map<std::string, FiniteGroup> m;
  return m;
}
std::map<std::string, ClassTable>& class_cache() {
  static std::map<std::string, ClassTable> m;
  return m;
}
std::map<std::string, HypergroupTable>& hypergroup_cache() {
  static std::map<std::string, HypergroupTable> m;
  return m;
}
std::map<std::string, CharacterTable>& character_cache() {
  static std::map<std::string, CharacterTable> m;
  return m;
}

FiniteGroup make_cyclic(int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return group_from_law("z" + std::to_string(n), n, 0,
                        [n](int a, int b) { return (a + b) % n; },
                        [n](int a) { return (n - a) % n; }, {1 % n}, std::move(labels));
}

FiniteGroup make_klein() {
  return group_from_law("z2xz2", 4, 0, [](int a, int b) { return a ^ b; },
                        [](int a) { return a; }, {1, 2}, {"00", "01", "10", "11"});
}

// Order 2n, elements r^i s^j encoded i + n*j with s r s = r^-1.
FiniteGroup make_dihedral(int order) {
  int n = order / 2;
  auto law = [n](int x, int y) {
    int i = x % n, j = x / n, k = y % n, l = y / n;
    int rot = j ? (i - k + n) % n : (i + k) % n;
    return rot + n * ((j + l) % 2);
  };
  auto inv = [n](int x) {
    int i = x % n, j = x / n;
    return j ? x : (n - i) % n;
  };
  std::vector<std::string> labels(order);
  for (int i = 0; i < n; ++i) {
    labels[i] = "r" + std::to_string(i);
    labels[i + n] = "r" + std::to_string(i) + "s";
  }
  return group_from_law("d" + std::to_string(order), order, 0, law, inv, {1 % n, n},
                        std::move(labels));
}

// Quaternion units encoded 2*axis + (sign < 0), axes 1, i, j, k.
FiniteGroup make_q8() {
  static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sg[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  auto law = [](int x, int y) {
    int a = x / 2, b = y / 2;
    int s = ((x % 2) ? -1 : 1) * ((y % 2) ? -1 : 1) * sg[a][b];
    return 2 * ax[a][b] + (s < 0 ? 1 : 0);
  };
  auto inv = [law](int x) {
    for (int y = 0; y < 8; ++y)
      if (law(x, y) == 0) return y;
    return -1;
  };
  return group_from_law("q8", 8, 0, law, inv, {2, 4},
                        {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

// Upper unitriangular 3x3 over Z_p: (x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy').
FiniteGroup make_heisenberg(int p) {
  int n = p * p * p;
  auto enc = [p](int x, int y, int z) { return (x * p + y) * p + z; };
  auto law = [p, enc](int u, int v) {
    int x = u / (p * p), y = (u / p) % p, z = u % p;
    int a = v / (p * p), b = (v / p) % p, c = v % p;
    return enc((x + a) % p, (y + b) % p, (z + c + x * b) % p);
  };
  auto inv = [p, enc](int u) {
    int x = u / (p * p), y = (u / p) % p, z = u % p;
    return enc((p - x) % p, (p - y) % p, ((x * y - z) % p + p) % p);
  };
  std::vector<std::string> labels(n);
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y)
      for (int z = 0; z < p; ++z)
        labels[enc(x, y, z)] = "(" + std::to_string(x) + "," + std::to_string(y) + "," +
                               std::to_string(z) + ")";
  return group_from_law("heisenberg" + std::to_string(p), n, 0, law, inv,
                        {enc(1, 0, 0), enc(0, 1, 0)}, std::move(labels));
}

// x -> ax + b over Z_p, a != 0; encoded (a-1)*p + b.
FiniteGroup make_affine(int p) {
  int n = p * (p - 1);
  auto law = [p](int u, int v) {
    int a = u / p + 1, b = u % p, c = v / p + 1, d = v % p;
    return (a * c % p - 1) * p + (a * d + b) % p;
  };
  auto inv = [p](int u) {
    int a = u / p + 1, b = u % p;
    int ai = 1;
    for (int t = 1; t < p; ++t)
      if (a * t % p == 1) ai = t;
    return (ai - 1) * p + (p - ai * b % p) % p;
  };
  int root = p == 7 ? 3 : 2;  // primitive roots: 2 mod 5, 3 mod 7, 2 mod 13
  std::vector<std::string> labels(n);
  for (int a = 1; a < p; ++a)
    for (int b = 0; b < p; ++b)
      labels[(a - 1) * p + b] = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return group_from_law("affine" + std::to_string(p), n, 0, law, inv,
                        {(root - 1) * p, 1}, std::move(labels));
}

FiniteGroup build_group(const std::string& name) {
  if (name.size() > 1 && name[0] == 'z' && name.find('x') == std::string::npos) {
    int n = atoi(name.c_str() + 1);
    if (n >= 1 && n <= 64 && name == "z" + std::to_string(n)) return make_cyclic(n);
  }
  if (name == "z2xz2") return make_klein();
  if (name == "s3")
    return from_permutation_generators({{1, 2, 0}, {1, 0, 2}}, "s3");
  if (name == "s4")
    return from_permutation_generators({{1, 2, 3, 0}, {1, 0, 2, 3}}, "s4");
  if (name.size() > 1 && name[0] == 'd') {
    int k = atoi(name.c_str() + 1);
    if (k >= 4 && k <= 32 && k % 2 == 0 && name == "d" + std::to_string(k))
      return make_dihedral(k);
  }
  if (name == "q8") return make_q8();
  if (name == "heisenberg3") return make_heisenberg(3);
  if (name == "heisenberg5") return make_heisenberg(5);
  if (name == "heisenberg7") return make_heisenberg(7);
  if (name == "heisenberg31") return make_heisenberg(31);
  if (name == "affine5") return make_affine(5);
  if (name == "affine7") return make_affine(7);
  if (name == "affine13") return make_affine(13);
  if (name == "z3xz3") return direct_product(catalog_group("z3"), catalog_group("z3"), "z3xz3");
  if (name == "z3xq8") return direct_product(catalog_group("z3"), catalog_group("q8"), "z3xq8");
  throw Error("NoMatch", "no catalog group named " + name);
}

bool group_is_abelian(const FiniteGroup& G) {
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < a; ++b)
      if (G.mul(a, b) != G.mul(b, a)) return false;
  return true;
}

HypergroupTable hypergroup_of_abelian_group(const FiniteGroup& G) {
  std::vector<Triple> tr;
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b) tr.push_back({a, b, G.mul(a, b), 1.0, Rat(1), true});
  return make_hypergroup(G.name, G.order, tr, G.identity, {}, G.labels);
}

}  // namespace

const FiniteGroup& catalog_group(const std::string& name) {
  std::lock_guard<std::recursive_mutex> lock(cat_mutex);
  auto& cache = group_cache();
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_group(name)).first;
  return it->second;
}

bool catalog_has_group(const std::string& name) {
  try {
    catalog_group(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

const ClassTable& catalog_class_table(const std::string& group_name) {
  std::lock_guard<std::recursive_mutex> lock(cat_mutex);
  auto& cache = class_cache();
  auto it = cache.find(group_name);
  if (it == cache.end())
    it = cache.emplace(group_name, class_hypergroup(catalog_group(group_name))).first;
  return it->second;
}

const HypergroupTable& catalog_hypergroup(const std::string& name) {
  std::lock_guard<std::recursive_mutex> lock(cat_mutex);
  if (name.rfind("conj-", 0) == 0) {
    std::string rest = name.substr(5);
    // tensor powers: conj-q8-2, conj-q8-3
    auto dash = rest.rfind('-');
    if (dash != std::string::npos && catalog_has_group(rest.substr(0, dash))) {
      int power = atoi(rest.c_str() + dash + 1);
      if (power < 2 || power > 3) throw Error("NoMatch", "no catalog hypergroup named " + name);
      std::string base = rest.substr(0, dash);
      auto& cache = hypergroup_cache();
      auto it = cache.find(name);
      if (it == cache.end()) {
        const HypergroupTable& one = catalog_hypergroup("conj-" + base);
        HypergroupTable t = tensor_product(one, one, "conj-" + base + "-2");
        if (power == 3) t = tensor_product(t, one, "conj-" + base + "-3");
        it = cache.emplace(name, std::move(t)).first;
      }
      return it->second;
    }
    return catalog_class_table(rest).table;
  }
  auto& cache = hypergroup_cache();
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  const FiniteGroup& G = catalog_group(name);  // throws NoMatch for unknown names
  if (!group_is_abelian(G))
    throw Error("NoMatch", "group " + name + " is nonabelian; use conj-" + name);
  return cache.emplace(name, hypergroup_of_abelian_group(G)).first->second;
}

bool catalog_has_hypergroup(const std::string& name) {
  try {
    catalog_hypergroup(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

const CharacterTable& catalog_characters(const std::string& name) {
  std::lock_guard<std::recursive_mutex> lock(cat_mutex);
  auto& cache = character_cache();
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, compute_characters(catalog_hypergroup(name))).first;
  return it->second;
}

std::vector<CatalogEntry> catalog_list() {
  std::vector<CatalogEntry> out;
  for (int n = 1; n <= 64; ++n) out.push_back({"z" + std::to_string(n), "group", n});
  out.push_back({"z2xz2", "group", 4});
  out.push_back({"s3", "group", 6});
  out.push_back({"s4", "group", 24});
  for (int k = 4; k <= 32; k += 2) out.push_back({"d" + std::to_string(k), "group", k});
  out.push_back({"q8", "group", 8});
  for (int p : {3, 5, 7, 31})
    out.push_back({"heisenberg" + std::to_string(p), "group", p * p * p});
  for (int p : {5, 7, 13})
    out.push_back({"affine" + std::to_string(p), "group", p * (p - 1)});
  out.push_back({"z3xz3", "group", 9});
  out.push_back({"z3xq8", "group", 24});

  for (int n = 1; n <= 64; ++n) out.push_back({"z" + std::to_string(n), "hypergroup", n});
  out.push_back({"z2xz2", "hypergroup", 4});
  out.push_back({"conj-s3", "hypergroup", 3});
  out.push_back({"conj-s4", "hypergroup", 5});
  for (int k = 4; k <= 32; k += 2) {
    int n = k / 2;
    int classes = n % 2 ? (n + 3) / 2 : n / 2 + 3;
    out.push_back({"conj-d" + std::to_string(k), "hypergroup", classes});
  }
  out.push_back({"conj-q8", "hypergroup", 5});
  out.push_back({"conj-q8-2", "hypergroup", 25});
  out.push_back({"conj-q8-3", "hypergroup", 125});
  for (int p : {3, 5, 7})
    out.push_back({"conj-heisenberg" + std::to_string(p), "hypergroup", p * p + p - 1});
  for (int p : {5, 7, 13}) out.push_back({"conj-affine" + std::to_string(p), "hypergroup", p});
  out.push_back({"conj-z3xz3", "hypergroup", 9});
  out.push_back({"conj-z3xq8", "hypergroup", 15});
  return out;
}

}  // namespace hyperstab
