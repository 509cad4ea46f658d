#include "matan/matroid.hpp"

#include <algorithm>
#include <numeric>

#include "matan/sfm.hpp"

namespace matan {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("ground set must be nonempty");
  for (int i = 0; i < int(labels_.size()); ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw InputError("duplicate element identifier '" + labels_[i] + "'");
  }
}

GroundSet GroundSet::numbered(int n, const std::string& prefix) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 1; i <= n; ++i) labels.push_back(prefix + std::to_string(i));
  return GroundSet(std::move(labels));
}

int GroundSet::index_of(const std::string& label) const {
  auto it = index_.find(label);
  return it == index_.end() ? -1 : it->second;
}

const char* kind_name(MatroidKind k) {
  switch (k) {
    case MatroidKind::graphic: return "graphic";
    case MatroidKind::uniform: return "uniform";
    case MatroidKind::explicit_bases: return "explicit";
    case MatroidKind::dual: return "dual";
    case MatroidKind::minor: return "minor";
    case MatroidKind::truncation: return "truncation";
    case MatroidKind::dual_truncation: return "dual-truncation";
    case MatroidKind::direct_sum: return "sum";
  }
  return "?";
}

namespace {
constexpr size_t kRankCacheCap = 1 << 20;
}

struct InitAccess {
  static void run(Matroid& m) { m.finish_init(); }
};

int Matroid::rank(const Subset& x) const {
  if (x.universe() != size()) throw InputError("subset universe does not match ground set");
  if (!memoize_) return rank_impl(x);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
  }
  int r = rank_impl(x);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cache_.size() >= kRankCacheCap) cache_.clear();
    cache_.emplace(x, r);
  }
  return r;
}

void Matroid::finish_init() {
  full_rank_ = rank_impl(Subset::full(size()));
  if (full_rank_ <= 0) throw DomainError("matroid has rank 0");
  for (int e = 0; e < size(); ++e) {
    Subset s(size());
    s.add(e);
    if (rank_impl(s) != 1)
      throw DomainError("element '" + ground().label(e) + "' is a loop");
  }
}

namespace {

class GraphicMatroid final : public Matroid {
 public:
  GraphicMatroid(GroundSet g, int nv, std::vector<std::pair<int, int>> edges)
      : Matroid(std::move(g), false), nv_(nv), edges_(std::move(edges)) {}
  MatroidKind kind() const override { return MatroidKind::graphic; }

  int rank_impl(const Subset& x) const override {
    std::vector<int> parent(nv_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    int merges = 0;
    x.for_each([&](int i) {
      int a = find(edges_[i].first), b = find(edges_[i].second);
      if (a != b) {
        parent[a] = b;
        ++merges;
      }
    });
    return merges;
  }

 private:
  int nv_;
  std::vector<std::pair<int, int>> edges_;
};

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(GroundSet g, int r) : Matroid(std::move(g), false), r_(r) {}
  MatroidKind kind() const override { return MatroidKind::uniform; }
  int rank_impl(const Subset& x) const override { return std::min(r_, x.count()); }

 private:
  int r_;
};

class ExplicitMatroid final : public Matroid {
 public:
  ExplicitMatroid(GroundSet g, std::vector<Subset> bases)
      : Matroid(std::move(g), false), bases_(std::move(bases)) {}
  MatroidKind kind() const override { return MatroidKind::explicit_bases; }
  int rank_impl(const Subset& x) const override {
    int best = 0;
    for (const auto& b : bases_) best = std::max(best, (b & x).count());
    return best;
  }
  const std::vector<Subset>& bases() const { return bases_; }

 private:
  std::vector<Subset> bases_;
};

class DualMatroid final : public Matroid {
 public:
  DualMatroid(GroundSet g, MatroidHandle inner)
      : Matroid(std::move(g), true), inner_(std::move(inner)) {}
  MatroidKind kind() const override { return MatroidKind::dual; }
  int rank_impl(const Subset& x) const override {
    // r*(X) = |X| - r(M) + r(E - X)
    return x.count() - inner_->rank() + inner_->rank(x.complement());
  }
  const MatroidHandle& inner() const { return inner_; }

 private:
  MatroidHandle inner_;
};

class MinorMatroid final : public Matroid {
 public:
  MinorMatroid(GroundSet g, MatroidHandle parent, std::vector<int> parent_index, Subset contract)
      : Matroid(std::move(g), true),
        parent_(std::move(parent)),
        parent_index_(std::move(parent_index)),
        contract_(std::move(contract)),
        contract_rank_(parent_->rank(contract_)) {}
  MatroidKind kind() const override { return MatroidKind::minor; }
  int rank_impl(const Subset& x) const override {
    Subset lifted = contract_;
    x.for_each([&](int i) { lifted.add(parent_index_[i]); });
    return parent_->rank(lifted) - contract_rank_;
  }

 private:
  MatroidHandle parent_;
  std::vector<int> parent_index_;  // local index -> parent index
  Subset contract_;
  int contract_rank_;
};

class TruncationMatroid final : public Matroid {
 public:
  TruncationMatroid(GroundSet g, MatroidHandle inner, int t)
      : Matroid(std::move(g), true), inner_(std::move(inner)), t_(t) {}
  MatroidKind kind() const override {
    return t_ <= inner_->rank() ? MatroidKind::truncation : MatroidKind::dual_truncation;
  }
  int rank_impl(const Subset& x) const override {
    int r = inner_->rank();
    if (t_ <= r) return std::min(t_, inner_->rank(x));
    // Rank of ((M*)_{|E|-t})*: min{|X|, t - r(M) + r(X)}.
    return std::min(x.count(), t_ - r + inner_->rank(x));
  }

 private:
  MatroidHandle inner_;
  int t_;
};

class DirectSumMatroid final : public Matroid {
 public:
  DirectSumMatroid(GroundSet g, std::vector<MatroidHandle> parts, std::vector<int> offsets)
      : Matroid(std::move(g), true), parts_(std::move(parts)), offsets_(std::move(offsets)) {}
  MatroidKind kind() const override { return MatroidKind::direct_sum; }
  int rank_impl(const Subset& x) const override {
    int total = 0;
    for (size_t p = 0; p < parts_.size(); ++p) {
      Subset local(parts_[p]->size());
      for (int i = 0; i < parts_[p]->size(); ++i)
        if (x.contains(offsets_[p] + i)) local.add(i);
      total += local.empty() ? 0 : parts_[p]->rank(local);
    }
    return total;
  }

 private:
  std::vector<MatroidHandle> parts_;
  std::vector<int> offsets_;
};

template <typename T, typename... Args>
MatroidHandle make_handle(Args&&... args) {
  auto m = std::make_shared<T>(std::forward<Args>(args)...);
  InitAccess::run(*m);
  return m;
}

}  // namespace

MatroidHandle graphic_matroid(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                              std::vector<std::string> labels) {
  if (num_vertices <= 0) throw InputError("graph needs at least one vertex");
  for (size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
      throw InputError("edge endpoint out of range");
    if (u == v) throw DomainError("self-loop edge at vertex " + std::to_string(u) + " is a loop");
  }
  GroundSet g = labels.empty() ? GroundSet::numbered(int(edges.size()))
                               : GroundSet(std::move(labels));
  if (g.size() != int(edges.size())) throw InputError("label count does not match edge count");
  return make_handle<GraphicMatroid>(std::move(g), num_vertices, edges);
}

MatroidHandle uniform_matroid(int n, int r, std::vector<std::string> labels) {
  if (n <= 0 || r <= 0 || r > n) throw InputError("uniform matroid requires 0 < r <= n");
  GroundSet g = labels.empty() ? GroundSet::numbered(n) : GroundSet(std::move(labels));
  if (g.size() != n) throw InputError("label count does not match n");
  return make_handle<UniformMatroid>(std::move(g), r);
}

MatroidHandle explicit_matroid(std::vector<std::string> labels,
                               const std::vector<std::vector<int>>& bases) {
  GroundSet g(std::move(labels));
  if (bases.empty()) throw DomainError("explicit matroid needs at least one base");
  int n = g.size();
  std::vector<Subset> bs;
  bs.reserve(bases.size());
  size_t card = bases[0].size();
  for (const auto& b : bases) {
    if (b.size() != card) throw DomainError("bases must be equicardinal");
    Subset s(n);
    for (int e : b) {
      if (e < 0 || e >= n) throw InputError("base element index out of range");
      s.add(e);
    }
    if (size_t(s.count()) != card) throw InputError("repeated element inside a base");
    bs.push_back(s);
  }
  // Exchange-axiom spot check, capped so pathological inputs stay cheap.
  if (bs.size() * bs.size() * card <= 2000000) {
    for (const auto& b1 : bs)
      for (const auto& b2 : bs) {
        Subset diff = b1 - b2;
        bool ok = true;
        diff.for_each([&](int x) {
          bool found = false;
          (b2 - b1).for_each([&](int y) {
            if (found) return;
            Subset cand = b1;
            cand.remove(x);
            cand.add(y);
            for (const auto& b : bs)
              if (b == cand) {
                found = true;
                return;
              }
          });
          if (!found) ok = false;
        });
        if (!ok) throw DomainError("base list violates the exchange axiom");
      }
  }
  return make_handle<ExplicitMatroid>(std::move(g), std::move(bs));
}

MatroidHandle dual_matroid(const MatroidHandle& m) {
  if (!m) throw InputError("null matroid handle");
  // A coloop of m becomes a loop of the dual; looplessness is required here.
  for (int e = 0; e < m->size(); ++e) {
    Subset rest = Subset::full(m->size());
    rest.remove(e);
    if (m->rank(rest) < m->rank())
      throw DomainError("element '" + m->ground().label(e) +
                        "' is a coloop; its dual would have a loop");
  }
  return make_handle<DualMatroid>(m->ground(), m);
}

MatroidHandle minor_matroid(const MatroidHandle& m, const Subset& del, const Subset& contract) {
  if (!m) throw InputError("null matroid handle");
  if (del.universe() != m->size() || contract.universe() != m->size())
    throw InputError("minor subsets must live on the parent ground set");
  if (del.intersects(contract)) throw InputError("delete and contract sets overlap");
  if (del.empty() && contract.empty()) return m;
  std::vector<std::string> labels;
  std::vector<int> parent_index;
  for (int i = 0; i < m->size(); ++i) {
    if (del.contains(i) || contract.contains(i)) continue;
    labels.push_back(m->ground().label(i));
    parent_index.push_back(i);
  }
  if (labels.empty()) throw DomainError("minor has empty ground set");
  return make_handle<MinorMatroid>(GroundSet(std::move(labels)), m, std::move(parent_index),
                                   contract);
}

MatroidHandle truncation_matroid(const MatroidHandle& m, int t) {
  if (!m) throw InputError("null matroid handle");
  if (t < 1 || t > m->size())
    throw InputError("truncation level must satisfy 1 <= t <= |E|");
  if (t == m->rank()) return m;
  return make_handle<TruncationMatroid>(m->ground(), m, t);
}

MatroidHandle direct_sum_matroid(const std::vector<MatroidHandle>& parts) {
  if (parts.empty()) throw InputError("direct sum needs at least one part");
  if (parts.size() == 1) return parts[0];
  std::vector<std::string> labels;
  std::vector<int> offsets;
  for (const auto& p : parts) {
    if (!p) throw InputError("null matroid handle");
    offsets.push_back(int(labels.size()));
    for (const auto& l : p->ground().labels()) labels.push_back(l);
  }
  return make_handle<DirectSumMatroid>(GroundSet(std::move(labels)), parts, std::move(offsets));
}

Subset closure(const Matroid& m, const Subset& x) {
  int rx = m.rank(x);
  Subset cl = x;
  for (int e = 0; e < m.size(); ++e) {
    if (cl.contains(e)) continue;
    Subset y = x;
    y.add(e);
    if (m.rank(y) == rx) cl.add(e);
  }
  return cl;
}

namespace {

void base_dfs(const Matroid& m, int next, Subset& current, int cur_size,
              const std::vector<Subset>& suffix, long long limit, long long& count,
              std::vector<Subset>* out) {
  if (cur_size == m.rank()) {
    ++count;
    if (count > limit)
      throw CapacityError("base count exceeds limit " + std::to_string(limit), count);
    if (out) out->push_back(current);
    return;
  }
  if (next >= m.size()) return;
  // Prune: remaining elements must still be able to span.
  if (m.rank(current | suffix[next]) < m.rank()) return;
  Subset with = current;
  with.add(next);
  if (m.rank(with) == cur_size + 1)
    base_dfs(m, next + 1, with, cur_size + 1, suffix, limit, count, out);
  base_dfs(m, next + 1, current, cur_size, suffix, limit, count, out);
}

std::vector<Subset> suffix_masks(int n) {
  std::vector<Subset> suffix(n + 1, Subset(n));
  for (int i = n - 1; i >= 0; --i) {
    suffix[i] = suffix[i + 1];
    suffix[i].add(i);
  }
  return suffix;
}

}  // namespace

std::vector<Subset> enumerate_bases(const Matroid& m, long long limit) {
  std::vector<Subset> out;
  Subset cur(m.size());
  long long count = 0;
  base_dfs(m, 0, cur, 0, suffix_masks(m.size()), limit, count, &out);
  return out;
}

long long count_bases(const Matroid& m, long long limit) {
  Subset cur(m.size());
  long long count = 0;
  base_dfs(m, 0, cur, 0, suffix_masks(m.size()), limit, count, nullptr);
  return count;
}

std::vector<Subset> components(const Matroid& m) {
  int n = m.size();
  // Connectivity function lambda(X) = r(X) + r(E-X) - r(E) is submodular and
  // nonnegative; its zero sets are exactly the separators. The component of e
  // is the minimal separator containing e.
  sfm::IntFn conn = [&m](const Subset& x) -> long long {
    if (x.empty() || x.count() == x.universe()) return 0;
    return m.rank(x) + m.rank(x.complement()) - m.rank();
  };
  std::vector<Subset> comps;
  Subset seen(n);
  for (int e = 0; e < n; ++e) {
    if (seen.contains(e)) continue;
    Subset forced_in(n);
    forced_in.add(e);
    auto res = sfm::minimize_int(n, conn, forced_in, Subset(n));
    comps.push_back(res.minimal_minimizer);
    seen |= res.minimal_minimizer;
  }
  return comps;
}

Subset extend_to_base(const Matroid& m, const Subset& start) {
  Subset cur = start;
  int r = m.rank(cur);
  if (r != cur.count()) throw InputError("extend_to_base requires an independent start");
  for (int e = 0; e < m.size() && r < m.rank(); ++e) {
    if (cur.contains(e)) continue;
    Subset y = cur;
    y.add(e);
    if (m.rank(y) == r + 1) {
      cur = y;
      ++r;
    }
  }
  return cur;
}

namespace {
template <typename W>
Subset greedy_base(const Matroid& m, const std::vector<W>& weight) {
  std::vector<int> order(m.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weight[a] > weight[b]; });
  Subset cur(m.size());
  int r = 0;
  for (int e : order) {
    Subset y = cur;
    y.add(e);
    if (m.rank(y) == r + 1) {
      cur = y;
      ++r;
      if (r == m.rank()) break;
    }
  }
  return cur;
}
}  // namespace

Subset max_weight_base(const Matroid& m, const std::vector<double>& weight) {
  return greedy_base(m, weight);
}

Subset max_weight_base_exact(const Matroid& m, const std::vector<mpq_class>& weight) {
  return greedy_base(m, weight);
}

}  // namespace matan
