#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace realg {

using Elem = int;

// Dense bit-set over the carrier 0..n-1.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(int n) : n_(n), words_((n + 63) / 64, 0) {}
  ElemSet(int n, std::initializer_list<Elem> xs) : ElemSet(n) {
    for (Elem x : xs) insert(x);
  }

  static ElemSet full(int n) {
    ElemSet s(n);
    for (Elem x = 0; x < n; ++x) s.insert(x);
    return s;
  }

  int universe() const { return n_; }

  bool contains(Elem x) const {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  void insert(Elem x) { words_[x >> 6] |= (std::uint64_t{1} << (x & 63)); }
  void erase(Elem x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool subset_of(const ElemSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  ElemSet& operator|=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElemSet& operator&=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }
  friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }

  bool operator==(const ElemSet& o) const = default;
  bool operator<(const ElemSet& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (std::size_t i = words_.size(); i-- > 0;)
      if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
    return false;
  }

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    for (Elem x = 0; x < n_; ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<Elem>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(n_);
    for (auto w : words_) h = h * 1000003u ^ std::hash<std::uint64_t>{}(w);
    return h;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace realg
