#include "matan/strength.hpp"

#include <algorithm>
#include <deque>

namespace matan {

WeightVector unit_weights(int n) { return WeightVector(n, Rat(1)); }

void check_weights(const Matroid& m, const WeightVector& w) {
  if (int(w.size()) != m.size()) throw InputError("weight vector size mismatch");
  for (const auto& q : w)
    if (q <= 0) throw InputError("weights must be strictly positive");
}

Rat weight_sum(const WeightVector& w, const Subset& x) {
  Rat s = 0;
  x.for_each([&](int i) { s += w[i]; });
  return s;
}

namespace {

// Clears denominators: returns integer weights u with u = L * sigma.
std::pair<std::vector<long long>, mpz_class> integer_weights(const WeightVector& sigma) {
  mpz_class lcm = 1;
  for (const auto& q : sigma) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<long long> u(sigma.size());
  mpz_class total = 0;
  for (size_t i = 0; i < sigma.size(); ++i) {
    mpz_class v = sigma[i].get_num() * (lcm / sigma[i].get_den());
    total += v;
    if (!v.fits_slong_p()) throw CapacityError("weights too large after clearing denominators");
    u[i] = v.get_si();
  }
  if (!total.fits_slong_p()) throw CapacityError("total weight too large");
  return {u, lcm};
}

long long sum_on(const std::vector<long long>& u, const Subset& x) {
  long long s = 0;
  x.for_each([&](int i) { s += u[i]; });
  return s;
}

}  // namespace

std::pair<Rat, Subset> fractional_arboricity(const Matroid& m, const WeightVector& sigma,
                                             const sfm::Options& opts) {
  check_weights(m, sigma);
  auto [u, lcm] = integer_weights(sigma);
  int n = m.size();
  // Work with integer weights u = lcm*sigma, so D_sigma = D_u / lcm.
  Rat lambda = make_rat(sum_on(u, Subset::full(n)), m.rank());
  while (true) {
    long long p = lambda.get_num().get_si();
    long long q = lambda.get_den().get_si();
    sfm::IntFn g = [&](const Subset& x) -> long long {
      if (x.empty()) return 0;
      return p * m.rank(x) - q * sum_on(u, x);
    };
    auto res = sfm::minimize_int(n, g, opts);
    if (res.value < 0) {
      const Subset& x = res.maximal_minimizer;
      lambda = make_rat(sum_on(u, x), m.rank(x));
    } else {
      Rat d = lambda / Rat(lcm);
      d.canonicalize();
      return {d, res.maximal_minimizer};
    }
  }
}

std::pair<Rat, Subset> strength(const Matroid& m, const WeightVector& sigma,
                                const sfm::Options& opts) {
  check_weights(m, sigma);
  auto [u, lcm] = integer_weights(sigma);
  int n = m.size();
  long long total = sum_on(u, Subset::full(n));
  int r = m.rank();
  Rat lambda = make_rat(total, r);  // theta >= S, so start from above
  while (true) {
    long long p = lambda.get_num().get_si();
    long long q = lambda.get_den().get_si();
    // G(Y) = sigma(E-Y) - lambda (r(E) - r(Y)), scaled by q.
    sfm::IntFn g = [&](const Subset& y) -> long long {
      return q * (total - sum_on(u, y)) - p * (r - m.rank(y));
    };
    auto res = sfm::minimize_int(n, g, opts);
    if (res.value < 0) {
      const Subset& y = res.minimal_minimizer;
      lambda = make_rat(total - sum_on(u, y), r - m.rank(y));
    } else {
      Rat s = lambda / Rat(lcm);
      s.canonicalize();
      return {s, res.minimal_minimizer.complement()};
    }
  }
}

DensityReport density_report(const Matroid& m, const WeightVector& sigma,
                             const sfm::Options& opts) {
  auto [s, sset] = strength(m, sigma, opts);
  auto [d, core] = fractional_arboricity(m, sigma, opts);
  DensityReport rep;
  rep.strength = s;
  rep.strength_set = sset;
  rep.arboricity = d;
  rep.core = core;
  rep.tau = rat_floor(s);
  rep.cover_number = rat_ceil(d);
  return rep;
}

namespace {

// Shortest augmenting path in the exchange digraph over k independent sets:
// arcs x -> y (y in I_j) when I_j + x is dependent and y lies in its circuit;
// x is a sink for copy j when I_j + x is independent. Swapping along a
// shortest path keeps every I_j independent.
bool augment(const Matroid& m, std::vector<Subset>& parts, Subset& covered, int start) {
  int n = m.size();
  int k = int(parts.size());
  std::vector<int> parent(n, -2);  // -2 unvisited, -1 root
  std::vector<int> owner(n, -1);   // copy owning the element
  for (int j = 0; j < k; ++j) parts[j].for_each([&](int e) { owner[e] = j; });

  std::deque<int> queue{start};
  parent[start] = -1;
  int sink = -1, sink_copy = -1;
  while (!queue.empty() && sink < 0) {
    int x = queue.front();
    queue.pop_front();
    for (int j = 0; j < k && sink < 0; ++j) {
      if (owner[x] == j) continue;
      Subset with = parts[j];
      with.add(x);
      if (m.rank(with) == with.count()) {
        sink = x;
        sink_copy = j;
        break;
      }
      // Circuit elements: y with I_j + x - y independent.
      parts[j].for_each([&](int y) {
        if (parent[y] != -2) return;
        Subset swap = with;
        swap.remove(y);
        if (m.rank(swap) == swap.count()) {
          parent[y] = x;
          queue.push_back(y);
        }
      });
    }
  }
  if (sink < 0) return false;

  // Path root .. sink; each arc x -> y inserts x into owner(y) evicting y,
  // and the sink finally enters sink_copy.
  std::vector<int> path;
  for (int v = sink; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  parts[sink_copy].add(path.back());
  for (int i = int(path.size()) - 2; i >= 0; --i) {
    int j = owner[path[i + 1]];
    parts[j].remove(path[i + 1]);
    parts[j].add(path[i]);
  }
  for (int j = 0; j < k; ++j)
    if (m.rank(parts[j]) != parts[j].count())
      throw std::logic_error("matroid union: augmenting path broke independence");
  covered.add(start);
  return true;
}

}  // namespace

std::vector<Subset> matroid_union_partition(const Matroid& m, int k) {
  if (k <= 0) throw InputError("k must be positive");
  int n = m.size();
  std::vector<Subset> parts(k, Subset(n));
  Subset covered(n);
  for (int e = 0; e < n; ++e) augment(m, parts, covered, e);
  return parts;
}

PackingResult base_packing(const Matroid& m, int k) {
  if (k <= 0) throw InputError("k must be positive");
  auto parts = matroid_union_partition(m, k);
  long long covered = 0;
  for (auto& p : parts) covered += p.count();
  if (covered == (long long)k * m.rank()) {
    return {true, parts, Subset(m.size())};
  }
  // Deficiency witness: minimize |E - X| + k r(X); the minimum equals the
  // maximum coverable size, so the minimizer violates Edmonds' condition.
  int n = m.size();
  sfm::IntFn f = [&](const Subset& x) -> long long {
    return (n - x.count()) + (long long)k * m.rank(x);
  };
  auto res = sfm::minimize_int(n, f);
  return {false, {}, res.minimal_minimizer};
}

CoveringResult base_covering(const Matroid& m, int k) {
  if (k <= 0) throw InputError("k must be positive");
  int n = m.size();
  auto parts = matroid_union_partition(m, k);
  long long covered = 0;
  for (auto& p : parts) covered += p.count();
  if (covered == n) {
    for (auto& p : parts) p = extend_to_base(m, p);
    return {true, parts, Subset(n)};
  }
  sfm::IntFn f = [&](const Subset& x) -> long long {
    return (long long)k * m.rank(x) - x.count();
  };
  auto res = sfm::minimize_int(n, f);
  return {false, {}, res.minimal_minimizer};
}

}  // namespace matan
