#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "matan/errors.hpp"
#include "matan/rational.hpp"
#include "matan/subset.hpp"

namespace matan {

// Ordered ground set with unique element labels. The order is fixed at
// construction and used for all vector indexing.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  // Labels "e1".."en".
  static GroundSet numbered(int n, const std::string& prefix = "e");

  int size() const { return int(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;  // -1 when absent
  bool has(const std::string& label) const { return index_of(label) >= 0; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

enum class MatroidKind {
  graphic,
  uniform,
  explicit_bases,
  dual,
  minor,
  truncation,
  dual_truncation,
  direct_sum,
};

const char* kind_name(MatroidKind k);

// Immutable rank oracle over a finite loopless ground set with positive rank.
// Composite handles (dual/minor/truncation/sum) compute rank by formula over
// the inner oracle; nothing is materialized. Safe to share across threads.
class Matroid {
 public:
  virtual ~Matroid() = default;

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  int rank() const { return full_rank_; }
  virtual MatroidKind kind() const = 0;

  // r(X). Throws InputError when X has the wrong universe size.
  int rank(const Subset& x) const;

  bool is_independent(const Subset& x) const { return rank(x) == x.count(); }
  bool is_base(const Subset& x) const { return x.count() == rank() && is_independent(x); }

 protected:
  explicit Matroid(GroundSet ground, bool memoize)
      : ground_(std::move(ground)), memoize_(memoize) {}

  virtual int rank_impl(const Subset& x) const = 0;

  // Called once by factories after construction.
  void finish_init();
  friend struct InitAccess;

 private:
  GroundSet ground_;
  int full_rank_ = -1;
  bool memoize_ = false;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<Subset, int, SubsetHash> cache_;
};

using MatroidHandle = std::shared_ptr<const Matroid>;

// --- constructors -----------------------------------------------------------

// Graphic matroid of a multigraph on vertices [0, num_vertices). Self-loops
// are matroid loops and rejected. Labels default to "e1".."em".
MatroidHandle graphic_matroid(int num_vertices,
                              const std::vector<std::pair<int, int>>& edges,
                              std::vector<std::string> labels = {});

MatroidHandle uniform_matroid(int n, int r, std::vector<std::string> labels = {});

MatroidHandle explicit_matroid(std::vector<std::string> labels,
                               const std::vector<std::vector<int>>& bases);

// Bases of the result are complements of bases of m. Throws DomainError when
// m has a coloop (which would be a loop of the dual), naming the element.
MatroidHandle dual_matroid(const MatroidHandle& m);

// (m / contract) \ del. Element labels are preserved so densities of a minor
// re-embed into the parent's vector space.
MatroidHandle minor_matroid(const MatroidHandle& m, const Subset& del, const Subset& contract);

inline MatroidHandle restriction(const MatroidHandle& m, const Subset& keep) {
  Subset del = keep.complement();
  return minor_matroid(m, del, Subset(m->size()));
}
inline MatroidHandle contraction(const MatroidHandle& m, const Subset& contract) {
  return minor_matroid(m, Subset(m->size()), contract);
}
inline MatroidHandle deletion(const MatroidHandle& m, const Subset& del) {
  return minor_matroid(m, del, Subset(m->size()));
}

// t-truncation for t <= r(m), dual truncation for r(m) < t < |E|, free matroid
// for t = |E|. Rank is min{t, r(X)} resp. min{|X|, t - r(M) + r(X)}.
MatroidHandle truncation_matroid(const MatroidHandle& m, int t);

MatroidHandle direct_sum_matroid(const std::vector<MatroidHandle>& parts);

// --- operations -------------------------------------------------------------

// cl(X) = {e : r(X + e) = r(X)}.
Subset closure(const Matroid& m, const Subset& x);

// All bases via rank-pruned DFS in element order. Throws CapacityError
// (carrying the partial count) when more than `limit` bases exist.
std::vector<Subset> enumerate_bases(const Matroid& m, long long limit);

// Counts bases without materializing them; stops at limit+1.
long long count_bases(const Matroid& m, long long limit);

// Finest partition into separators (connectivity components), ordered by
// smallest element index.
std::vector<Subset> components(const Matroid& m);

// Lexicographically-first maximal independent superset of `start` (which must
// be independent).
Subset extend_to_base(const Matroid& m, const Subset& start);

// Maximum-weight base by the matroid greedy algorithm; ties broken by element
// order, so the result is deterministic.
Subset max_weight_base(const Matroid& m, const std::vector<double>& weight);
Subset max_weight_base_exact(const Matroid& m, const std::vector<mpq_class>& weight);

}  // namespace matan
