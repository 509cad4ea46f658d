#include "matan/sfm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "matan/errors.hpp"

namespace matan::sfm {

namespace {

// All solving happens on the free elements: h(Y) = f(Y + forced_in) - f(forced_in)
// for Y inside the free part, so h(empty) = 0 and h is integer-valued.
struct Reduced {
  int n = 0;  // global universe
  int m = 0;  // free elements
  std::vector<int> free_idx;
  Subset forced_in;
  const IntFn* f = nullptr;
  long long base = 0;

  Subset lift(const Subset& local) const {
    Subset g = forced_in;
    local.for_each([&](int i) { g.add(free_idx[i]); });
    return g;
  }
  long long h(const Subset& local) const { return (*f)(lift(local)) - base; }
};

struct InnerResult {
  long long value;  // min of h
  Subset minimal;   // over free part
  Subset maximal;
};

InnerResult solve_exhaustive(const Reduced& red) {
  int m = red.m;
  long long best = 0;
  Subset arg_union(m), arg_inter = Subset::full(m);
  bool have = false;
  std::uint64_t total = std::uint64_t(1) << m;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Subset local = Subset::from_mask(m, mask);
    long long v = red.h(local);
    if (!have || v < best) {
      best = v;
      arg_union = local;
      arg_inter = local;
      have = true;
    } else if (v == best) {
      arg_union |= local;
      arg_inter &= local;
    }
  }
  return {best, arg_inter, arg_union};
}

// ---------------------------------------------------------------------------
// Fujishige-Wolfe minimum-norm point over the base polytope of h, with exact
// certification: candidate sets are level sets of the iterate, evaluated with
// the integer oracle, and the lower bound sum_e min(x(e),0) is computed from
// an exact rational point of B(h) (a rounded convex combination of integer
// greedy vertices). Since h is integer-valued, UB - LB < 1 proves optimality.
// ---------------------------------------------------------------------------

using Vertex = std::vector<long long>;

Vertex greedy_vertex(const Reduced& red, const std::vector<int>& order) {
  Vertex v(red.m);
  Subset prefix = red.forced_in;
  long long prev = 0;
  for (int i : order) {
    prefix.add(red.free_idx[i]);
    long long cur = (*red.f)(prefix) - red.base;
    v[i] = cur - prev;
    prev = cur;
  }
  return v;
}

std::vector<int> order_by(const std::vector<double>& x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
  return order;
}

double dot(const std::vector<double>& a, const Vertex& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * double(b[i]);
  return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Solves min ||sum a_i v_i||^2 subject to sum a_i = 1 via the KKT system.
// Returns false when the system is numerically singular.
bool affine_minimizer(const std::vector<Vertex>& alive, std::vector<double>& alpha) {
  int s = int(alive.size());
  int dim = s + 1;
  std::vector<double> A(dim * dim, 0.0), rhs(dim, 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      double g = 0;
      for (size_t e = 0; e < alive[i].size(); ++e) g += double(alive[i][e]) * double(alive[j][e]);
      A[i * dim + j] = g;
    }
  for (int i = 0; i < s; ++i) {
    A[i * dim + s] = 1.0;
    A[s * dim + i] = 1.0;
  }
  rhs[s] = 1.0;
  double scale = 1.0;
  for (int i = 0; i < s; ++i) scale = std::max(scale, std::abs(A[i * dim + i]));
  // Gaussian elimination with partial pivoting.
  std::vector<int> piv(dim);
  std::iota(piv.begin(), piv.end(), 0);
  for (int col = 0; col < dim; ++col) {
    int best = col;
    for (int r = col + 1; r < dim; ++r)
      if (std::abs(A[piv[r] * dim + col]) > std::abs(A[piv[best] * dim + col])) best = r;
    std::swap(piv[col], piv[best]);
    double p = A[piv[col] * dim + col];
    if (std::abs(p) < 1e-13 * scale) return false;
    for (int r = col + 1; r < dim; ++r) {
      double factor = A[piv[r] * dim + col] / p;
      if (factor == 0) continue;
      for (int c = col; c < dim; ++c) A[piv[r] * dim + c] -= factor * A[piv[col] * dim + c];
      rhs[piv[r]] -= factor * rhs[piv[col]];
    }
  }
  std::vector<double> sol(dim);
  for (int col = dim - 1; col >= 0; --col) {
    double s2 = rhs[piv[col]];
    for (int c = col + 1; c < dim; ++c) s2 -= A[piv[col] * dim + c] * sol[c];
    sol[col] = s2 / A[piv[col] * dim + col];
  }
  alpha.assign(sol.begin(), sol.begin() + s);
  return true;
}

struct Mnp {
  const Reduced& red;
  std::vector<Vertex> verts;
  std::vector<double> theta;
  std::vector<double> x;

  explicit Mnp(const Reduced& r) : red(r) {
    std::vector<int> order(red.m);
    std::iota(order.begin(), order.end(), 0);
    verts.push_back(greedy_vertex(red, order));
    theta.assign(1, 1.0);
    rebuild_x();
  }

  void rebuild_x() {
    x.assign(red.m, 0.0);
    for (size_t i = 0; i < verts.size(); ++i)
      for (int e = 0; e < red.m; ++e) x[e] += theta[i] * double(verts[i][e]);
  }

  void drop_zero_weights(double tol) {
    for (int i = int(verts.size()) - 1; i >= 0; --i) {
      if (theta[i] <= tol && verts.size() > 1) {
        verts.erase(verts.begin() + i);
        theta.erase(theta.begin() + i);
      }
    }
    double total = std::accumulate(theta.begin(), theta.end(), 0.0);
    if (total > 0)
      for (auto& t : theta) t /= total;
  }

  // One Wolfe major cycle; returns the duality-style gap <x,x> - <x,w>.
  double major_cycle() {
    auto order = order_by(x);
    Vertex w = greedy_vertex(red, order);
    double xx = dot(x, x);
    double xw = dot(x, w);
    double gap = xx - xw;
    double norm = std::max(1.0, xx);
    if (gap <= 1e-14 * norm) return gap;
    for (const auto& v : verts)
      if (v == w) return gap;  // numerically stuck; let the caller certify
    verts.push_back(std::move(w));
    theta.push_back(0.0);
    minor_cycles();
    return gap;
  }

  void minor_cycles() {
    for (int guard = 0; guard < 4 * int(verts.size()) + 16; ++guard) {
      std::vector<double> alpha;
      if (!affine_minimizer(verts, alpha)) {
        // Affinely dependent set: drop the vertex with the smallest weight.
        size_t drop = 0;
        for (size_t i = 1; i < verts.size(); ++i)
          if (theta[i] < theta[drop]) drop = i;
        if (verts.size() <= 1) return;
        verts.erase(verts.begin() + drop);
        theta.erase(theta.begin() + drop);
        continue;
      }
      double min_alpha = *std::min_element(alpha.begin(), alpha.end());
      if (min_alpha >= -1e-12) {
        theta = alpha;
        for (auto& t : theta) t = std::max(t, 0.0);
        drop_zero_weights(0.0);
        rebuild_x();
        return;
      }
      double t = 1.0;
      for (size_t i = 0; i < theta.size(); ++i)
        if (alpha[i] < theta[i]) t = std::min(t, theta[i] / (theta[i] - alpha[i]));
      for (size_t i = 0; i < theta.size(); ++i) theta[i] += t * (alpha[i] - theta[i]);
      drop_zero_weights(1e-13);
      rebuild_x();
    }
  }
};

struct Certified {
  bool value_ok = false;
  bool sets_ok = false;
  long long value = 0;
  Subset minimal, maximal;
  std::vector<Rat> x_exact;
  Rat lb;
};

// Rounds theta to an exact point of the simplex and forms the corresponding
// exact point of B(h); then checks UB - LB < 1 and the level-set conditions.
Certified certify(const Reduced& red, const Mnp& mnp) {
  Certified out;
  int m = red.m;
  const long long kDen = 1LL << 40;
  std::vector<Rat> theta_exact(mnp.theta.size());
  size_t largest = 0;
  for (size_t i = 0; i < mnp.theta.size(); ++i) {
    long long num = (long long)std::floor(std::max(0.0, mnp.theta[i]) * double(kDen));
    theta_exact[i] = make_rat(num, kDen);
    if (mnp.theta[i] > mnp.theta[largest]) largest = i;
  }
  Rat sum = 0;
  for (auto& t : theta_exact) sum += t;
  theta_exact[largest] += 1 - sum;  // stays positive: largest weight >= 1/|S|
  if (theta_exact[largest] < 0) return out;

  out.x_exact.assign(m, Rat(0));
  for (size_t i = 0; i < theta_exact.size(); ++i) {
    if (theta_exact[i] == 0) continue;
    for (int e = 0; e < m; ++e) out.x_exact[e] += theta_exact[i] * mpz_from_ll(mnp.verts[i][e]);
  }
  Rat lb = 0;
  for (int e = 0; e < m; ++e)
    if (out.x_exact[e] < 0) lb += out.x_exact[e];
  out.lb = lb;

  // Candidate sets: level sets of the iterate (prefixes in ascending order).
  auto order = order_by(mnp.x);
  Subset prefix(m);
  long long ub = 0;  // h(empty) = 0
  std::vector<long long> prefix_val(m + 1, 0);
  for (int i = 0; i < m; ++i) {
    prefix.add(order[i]);
    prefix_val[i + 1] = red.h(prefix);
    ub = std::min(ub, prefix_val[i + 1]);
  }
  if (make_rat(ub) - lb >= 1) return out;  // value not certified yet
  out.value_ok = true;
  out.value = ub;

  // Maximal minimizer: the longest prefix achieving ub, certified by checking
  // that every element outside it provably belongs to no minimizer.
  int max_len = 0, min_len = -1;
  for (int i = 0; i <= m; ++i) {
    if (prefix_val[i] == ub) {
      max_len = i;
      if (min_len < 0) min_len = i;
    }
  }
  Rat slack = make_rat(ub) - lb;  // >= 0, < 1
  bool ok = true;
  for (int i = max_len; i < m && ok; ++i)
    if (out.x_exact[order[i]] <= slack) ok = false;
  for (int i = 0; i < min_len && ok; ++i)
    if (-out.x_exact[order[i]] <= slack) ok = false;
  if (!ok) return out;
  Subset maximal(m), minimal(m);
  for (int i = 0; i < max_len; ++i) maximal.add(order[i]);
  for (int i = 0; i < min_len; ++i) minimal.add(order[i]);
  out.sets_ok = true;
  out.minimal = minimal;
  out.maximal = maximal;
  return out;
}

long long certified_min_value(const Reduced& red, const Options& opts);

InnerResult solve_mnp(const Reduced& red, const Options& opts) {
  Mnp mnp(red);
  Certified cert;
  int iter = 0;
  int since_check = 0;
  double last_gap = 1e300;
  while (true) {
    double gap = mnp.major_cycle();
    ++iter;
    ++since_check;
    bool should_check = gap <= 1e-9 * std::max(1.0, dot(mnp.x, mnp.x)) || since_check >= 64 ||
                        gap >= last_gap * (1 - 1e-12);
    last_gap = gap;
    if (should_check) {
      since_check = 0;
      cert = certify(red, mnp);
      if (cert.value_ok && cert.sets_ok) return {cert.value, cert.minimal, cert.maximal};
      if (cert.value_ok && gap <= 1e-13 * std::max(1.0, dot(mnp.x, mnp.x))) break;
    }
    if (iter >= opts.mnp_max_iter) {
      if (cert.value_ok) break;
      throw CapacityError("min-norm-point solver failed to certify a minimum");
    }
  }
  // The value is certified but the level-set structure is ambiguous near zero.
  // Resolve each undecided element with a value-only constrained solve.
  long long ub = cert.value;
  Rat slack = make_rat(ub) - cert.lb;
  Subset minimal(red.m), maximal(red.m);
  for (int e = 0; e < red.m; ++e) {
    if (cert.x_exact[e] > slack) continue;  // provably in no minimizer
    if (-cert.x_exact[e] > slack) {         // provably in every minimizer
      minimal.add(e);
      maximal.add(e);
      continue;
    }
    // In every minimizer <=> forbidding e raises the minimum.
    Reduced without = red;
    without.free_idx.clear();
    for (int i = 0; i < red.m; ++i)
      if (i != e) without.free_idx.push_back(red.free_idx[i]);
    without.m = red.m - 1;
    if (certified_min_value(without, opts) > ub) {
      minimal.add(e);
      maximal.add(e);
      continue;
    }
    // In some minimizer <=> forcing e keeps the minimum.
    Reduced with = without;
    with.forced_in = red.forced_in;
    with.forced_in.add(red.free_idx[e]);
    with.base = (*red.f)(with.forced_in);
    if (with.base - red.base + certified_min_value(with, opts) == ub) maximal.add(e);
  }
  return {ub, minimal, maximal};
}

// Value-only certified minimum of h for a reduced instance.
long long certified_min_value(const Reduced& red, const Options& opts) {
  if (red.m == 0) return 0;
  if (red.m <= opts.exhaustive_max) {
    long long best = 0;
    std::uint64_t total = std::uint64_t(1) << red.m;
    for (std::uint64_t mask = 0; mask < total; ++mask)
      best = std::min(best, red.h(Subset::from_mask(red.m, mask)));
    return best;
  }
  Mnp mnp(red);
  for (int iter = 0; iter < opts.mnp_max_iter; ++iter) {
    mnp.major_cycle();
    if (iter % 16 == 15 || iter > 64) {
      Certified cert = certify(red, mnp);
      if (cert.value_ok) return cert.value;
    }
  }
  throw CapacityError("min-norm-point value solve failed to certify");
}

Result finish(const Reduced& red, const InnerResult& inner) {
  Result res;
  res.value = make_rat(inner.value + red.base);
  res.minimal_minimizer = red.lift(inner.minimal);
  res.maximal_minimizer = red.lift(inner.maximal);
  res.minimizer = res.minimal_minimizer;
  return res;
}

Reduced reduce(int n, const IntFn& f, const Subset& forced_in, const Subset& forced_out) {
  if (forced_in.universe() != n || forced_out.universe() != n)
    throw InputError("forced sets must match the universe");
  if (forced_in.intersects(forced_out)) throw InputError("forced_in and forced_out overlap");
  Reduced red;
  red.n = n;
  red.forced_in = forced_in;
  red.f = &f;
  for (int i = 0; i < n; ++i)
    if (!forced_in.contains(i) && !forced_out.contains(i)) red.free_idx.push_back(i);
  red.m = int(red.free_idx.size());
  red.base = f(forced_in);
  return red;
}

}  // namespace

Result minimize_int(int n, const IntFn& f, const Subset& forced_in, const Subset& forced_out,
                    const Options& opts) {
  Reduced red = reduce(n, f, forced_in, forced_out);
  if (red.m == 0) {
    InnerResult inner{0, Subset(0), Subset(0)};
    return finish(red, inner);
  }
  InnerResult inner =
      red.m <= opts.exhaustive_max ? solve_exhaustive(red) : solve_mnp(red, opts);
  return finish(red, inner);
}

Result minimize_int(int n, const IntFn& f, const Options& opts) {
  return minimize_int(n, f, Subset(n), Subset(n), opts);
}

Result minimize(int n, const RatFn& f, const Subset& forced_in, const Subset& forced_out,
                std::optional<long long> value_scale, const Options& opts) {
  int free_count = n - (forced_in | forced_out).count();
  if (free_count <= opts.exhaustive_max) {
    // Exact rational sweep; no scale needed.
    Reduced red;
    red.n = n;
    red.forced_in = forced_in;
    for (int i = 0; i < n; ++i)
      if (!forced_in.contains(i) && !forced_out.contains(i)) red.free_idx.push_back(i);
    red.m = int(red.free_idx.size());
    Rat best;
    Subset arg_union(red.m), arg_inter = Subset::full(red.m);
    bool have = false;
    std::uint64_t total = std::uint64_t(1) << red.m;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      Subset local = Subset::from_mask(red.m, mask);
      Rat v = f(red.lift(local));
      if (!have || v < best) {
        best = v;
        arg_union = local;
        arg_inter = local;
        have = true;
      } else if (v == best) {
        arg_union |= local;
        arg_inter &= local;
      }
    }
    Result res;
    res.value = best;
    res.minimal_minimizer = red.lift(arg_inter);
    res.maximal_minimizer = red.lift(arg_union);
    res.minimizer = res.minimal_minimizer;
    return res;
  }
  if (!value_scale)
    throw CapacityError("ground set too large for the configured strategy (" +
                        std::to_string(free_count) + " free elements, no value scale)");
  long long scale = *value_scale;
  IntFn fi = [&f, scale](const Subset& x) -> long long {
    Rat v = f(x) * mpz_from_ll(scale);
    v.canonicalize();
    if (v.get_den() != 1)
      throw InputError("value_scale does not clear the oracle's denominators");
    if (!v.get_num().fits_slong_p()) throw CapacityError("scaled oracle value overflows");
    return v.get_num().get_si();
  };
  Result res = minimize_int(n, fi, forced_in, forced_out, opts);
  res.value /= mpz_from_ll(scale);
  res.value.canonicalize();
  return res;
}

Result minimize(int n, const RatFn& f, std::optional<long long> value_scale, const Options& opts) {
  return minimize(n, f, Subset(n), Subset(n), value_scale, opts);
}

}  // namespace matan::sfm
