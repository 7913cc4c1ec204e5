#pragma once
// Exact rational arithmetic on 64-bit numerator/denominator.
// Structure constants of class hypergroups are small rationals (counts over
// class sizes), so int64 with gcd reduction is plenty; intermediates go
// through __int128 to dodge overflow during a*b/c chains.

#include <cstdint>
#include <string>

namespace hyperstab {

struct Rat {
  long long num = 0;
  long long den = 1;  // always > 0 after normalize()

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d);

  void normalize();

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool is_zero() const { return num == 0; }
  bool is_negative() const { return num < 0; }

  double to_double() const { return double(num) / double(den); }
  std::string str() const;  // "p/q", or "p" when q == 1
};

Rat rat_inverse(const Rat& r);  // 1/r, r != 0

// Parse "p", "p/q", or a decimal literal. `exact` reports whether the text
// was an integer or fraction (decimals come back as false with the value in
// `approx`).
bool parse_rational(const std::string& text, Rat* out, double* approx, bool* exact);

}  // namespace hyperstab
