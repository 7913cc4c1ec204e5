#include "hyperstab/rational.h"

#include <cassert>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace hyperstab {

static long long reduce128(__int128 n, __int128 d, long long* outn, long long* outd) {
  if (d < 0) { n = -n; d = -d; }
  __int128 a = n < 0 ? -n : n, b = d;
  while (b) { __int128 t = a % b; a = b; b = t; }
  if (a == 0) a = 1;
  n /= a; d /= a;
  assert(n <= INT64_MAX && n >= INT64_MIN && d <= INT64_MAX && "rational overflow");
  *outn = (long long)n;
  *outd = (long long)d;
  return 0;
}

Rat::Rat(long long n, long long d) : num(n), den(d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  normalize();
}

void Rat::normalize() {
  reduce128(num, den, &num, &den);
}

Rat Rat::operator+(const Rat& o) const {
  Rat r;
  reduce128((__int128)num * o.den + (__int128)o.num * den, (__int128)den * o.den, &r.num, &r.den);
  return r;
}

Rat Rat::operator-(const Rat& o) const {
  Rat r;
  reduce128((__int128)num * o.den - (__int128)o.num * den, (__int128)den * o.den, &r.num, &r.den);
  return r;
}

Rat Rat::operator*(const Rat& o) const {
  Rat r;
  reduce128((__int128)num * o.num, (__int128)den * o.den, &r.num, &r.den);
  return r;
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw std::domain_error("rational division by zero");
  Rat r;
  reduce128((__int128)num * o.den, (__int128)den * o.num, &r.num, &r.den);
  return r;
}

Rat rat_inverse(const Rat& r) { return Rat(1) / r; }

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

bool parse_rational(const std::string& text, Rat* out, double* approx, bool* exact) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long p = 0, q = 0;
    auto r1 = std::from_chars(text.data(), text.data() + slash, p);
    auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), q);
    if (r1.ec != std::errc() || r2.ec != std::errc() || r2.ptr != text.data() + text.size() || q == 0)
      return false;
    *out = Rat(p, q);
    *approx = out->to_double();
    *exact = true;
    return true;
  }
  if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
      text.find('E') == std::string::npos) {
    long long p = 0;
    auto r = std::from_chars(text.data(), text.data() + text.size(), p);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) return false;
    *out = Rat(p);
    *approx = double(p);
    *exact = true;
    return true;
  }
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) return false;
  *out = Rat(0);
  *approx = v;
  *exact = false;
  return true;
}

}  // namespace hyperstab
