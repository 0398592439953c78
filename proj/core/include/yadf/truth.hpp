#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace yadf {

/// Three-valued truth: true, false, undecided.
enum class Tv : std::uint8_t { True = 0, False = 1, Undec = 2 };

constexpr char to_char(Tv v) {
  switch (v) {
    case Tv::True: return 't';
    case Tv::False: return 'f';
    default: return 'u';
  }
}

// Information order: u below t and f; t and f incomparable.
constexpr bool leq_i(Tv a, Tv b) { return a == b || a == Tv::Undec; }

/// Total assignment of truth values to the statements of one instance,
/// stored in the instance's declaration order.
class Interpretation3 {
 public:
  Interpretation3() = default;
  explicit Interpretation3(std::size_t n, Tv fill = Tv::Undec) : vals_(n, fill) {}
  explicit Interpretation3(std::vector<Tv> vals) : vals_(std::move(vals)) {}

  std::size_t size() const { return vals_.size(); }
  Tv operator[](std::size_t i) const { return vals_[i]; }
  Tv& operator[](std::size_t i) { return vals_[i]; }

  bool two_valued() const {
    for (Tv v : vals_)
      if (v == Tv::Undec) return false;
    return true;
  }

  std::size_t undecided_count() const {
    std::size_t k = 0;
    for (Tv v : vals_) k += v == Tv::Undec;
    return k;
  }

  friend bool operator==(const Interpretation3&, const Interpretation3&) = default;
  friend std::strong_ordering operator<=>(const Interpretation3&, const Interpretation3&) = default;

 private:
  std::vector<Tv> vals_;
};

inline bool leq_i(const Interpretation3& v, const Interpretation3& w) {
  if (v.size() != w.size()) throw std::invalid_argument("leq_i: domain mismatch");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!leq_i(v[i], w[i])) return false;
  return true;
}

inline bool lt_i(const Interpretation3& v, const Interpretation3& w) {
  return leq_i(v, w) && v != w;
}

/// All 2-valued extensions of v, enumerated so that undecided statements flip
/// lexicographically in statement order with f before t (2^k items).
class CompletionRange {
 public:
  explicit CompletionRange(const Interpretation3& v) : base_(v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == Tv::Undec) upos_.push_back(i);
    if (upos_.size() >= 63) throw std::invalid_argument("completions: too many undecided statements");
  }

  std::uint64_t count() const { return std::uint64_t{1} << upos_.size(); }

  Interpretation3 at(std::uint64_t idx) const {
    Interpretation3 w = base_;
    std::size_t k = upos_.size();
    for (std::size_t j = 0; j < k; ++j)
      w[upos_[j]] = (idx >> (k - 1 - j)) & 1 ? Tv::True : Tv::False;
    return w;
  }

  class iterator {
   public:
    iterator(const CompletionRange* r, std::uint64_t i) : r_(r), i_(i) {}
    Interpretation3 operator*() const { return r_->at(i_); }
    iterator& operator++() { ++i_; return *this; }
    bool operator!=(const iterator& o) const { return i_ != o.i_; }

   private:
    const CompletionRange* r_;
    std::uint64_t i_;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, count()}; }

 private:
  Interpretation3 base_;
  std::vector<std::size_t> upos_;
};

inline CompletionRange completions(const Interpretation3& v) { return CompletionRange(v); }

}  // namespace yadf
