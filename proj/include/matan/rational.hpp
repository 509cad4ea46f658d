#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace matan {

using Rat = mpq_class;

inline mpz_class mpz_from_ll(long long v) { return mpz_class(static_cast<long>(v)); }

inline Rat make_rat(long long num, long long den = 1) {
  Rat q(mpz_from_ll(num), mpz_from_ll(den));
  q.canonicalize();
  return q;
}

// Canonical "p/q" (or "p" when q == 1), always in lowest terms.
std::string rat_str(const Rat& q);

// Accepts "p/q", plain integers, and decimal literals like "0.25" or "-1.5e2".
Rat parse_rat(const std::string& text);

long long rat_floor(const Rat& q);
long long rat_ceil(const Rat& q);

double rat_to_double(const Rat& q);

// Best rational approximation with denominator <= max_den, via the
// Stern-Brocot / continued-fraction convergents of x.
Rat rat_from_double(double x, long long max_den);

Rat rat_sum(const std::vector<Rat>& v);

}  // namespace matan
