#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace matan {

// Fixed-universe bitset over element indices [0, size). The universe size is
// set at construction and all binary operations require matching sizes.
class Subset {
 public:
  Subset() = default;
  explicit Subset(int universe) : n_(universe), words_((universe + 63) / 64, 0) {}

  static Subset full(int universe) {
    Subset s(universe);
    for (int i = 0; i < universe; ++i) s.add(i);
    return s;
  }
  static Subset of(int universe, std::initializer_list<int> elems) {
    Subset s(universe);
    for (int e : elems) s.add(e);
    return s;
  }
  static Subset of(int universe, const std::vector<int>& elems) {
    Subset s(universe);
    for (int e : elems) s.add(e);
    return s;
  }
  // Interprets the low bits of `mask` as membership; universe must be <= 64.
  static Subset from_mask(int universe, std::uint64_t mask) {
    Subset s(universe);
    if (universe > 0) s.words_[0] = mask;
    return s;
  }

  int universe() const { return n_; }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool contains(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void add(int i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void remove(int i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  Subset& operator|=(const Subset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Subset& operator&=(const Subset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Subset& operator-=(const Subset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator-(Subset a, const Subset& b) { return a -= b; }

  Subset complement() const {
    Subset r(n_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  bool operator==(const Subset& o) const { return n_ == o.n_ && words_ == o.words_; }
  bool operator!=(const Subset& o) const { return !(*this == o); }
  bool is_subset_of(const Subset& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const Subset& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(int(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }
  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  size_t hash() const {
    size_t h = std::hash<int>()(n_);
    for (auto w : words_) h = h * 1000003u ^ std::hash<std::uint64_t>()(w);
    return h;
  }

  std::string debug_str() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int i) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    });
    return s + "}";
  }

 private:
  void trim() {
    int rem = n_ & 63;
    if (rem && !words_.empty()) words_.back() &= (std::uint64_t(1) << rem) - 1;
  }
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SubsetHash {
  size_t operator()(const Subset& s) const { return s.hash(); }
};

}  // namespace matan
