#include "matan/rational.hpp"

#include <cmath>
#include <cstdlib>

#include "matan/errors.hpp"

namespace matan {

std::string rat_str(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    try {
      mpz_class num(text.substr(0, slash));
      mpz_class den(text.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + text + "'");
      Rat q(num, den);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational literal '" + text + "'");
    }
  }
  if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
      text.find('E') == std::string::npos) {
    try {
      return Rat(mpz_class(text));
    } catch (const std::invalid_argument&) {
      throw ParseError("bad integer literal '" + text + "'");
    }
  }
  // Decimal literal: parse exactly, not through binary floating point.
  char* end = nullptr;
  std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw ParseError("bad numeric literal '" + text + "'");
  std::string t = text;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  long exp10 = 0;
  auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    exp10 = std::strtol(t.c_str() + epos + 1, nullptr, 10);
    t = t.substr(0, epos);
  }
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    exp10 -= long(t.size() - dot - 1);
    t.erase(dot, 1);
  }
  if (t.empty()) t = "0";
  mpz_class num(t);
  Rat q(num);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, std::labs(exp10));
  if (exp10 >= 0)
    q *= Rat(pow10);
  else
    q /= Rat(pow10);
  if (neg) q = -q;
  q.canonicalize();
  return q;
}

long long rat_floor(const Rat& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return z.get_si();
}

long long rat_ceil(const Rat& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return z.get_si();
}

double rat_to_double(const Rat& q) { return q.get_d(); }

Rat rat_from_double(double x, long long max_den) {
  if (max_den < 1) max_den = 1;
  bool neg = x < 0;
  if (neg) x = -x;
  // Continued-fraction convergents p/q of x until the denominator bound.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    double a_f = std::floor(frac);
    if (a_f > 9e17) break;
    long long a = (long long)a_f;
    long long p2 = a * p1 + p0;
    long long q2 = a * q1 + q0;
    if (q2 > max_den || p2 < 0 || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - a_f;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) {
    p1 = (long long)std::llround(x);
    q1 = 1;
  }
  Rat q = make_rat(p1, q1);
  return neg ? Rat(-q) : q;
}

Rat rat_sum(const std::vector<Rat>& v) {
  Rat s = 0;
  for (const auto& q : v) s += q;
  return s;
}

}  // namespace matan
