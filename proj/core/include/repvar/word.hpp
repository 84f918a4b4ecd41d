#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "repvar/errors.hpp"

namespace repvar {

// A freely reduced word over ranked generators.  Letters are (generator
// index, nonzero exponent) syllables; adjacent syllables always have distinct
// generator indices.  The empty word is the identity.
class FreeWord {
 public:
  using Syllable = std::pair<int, std::int64_t>;

  FreeWord() = default;

  // Reduces eagerly: merges adjacent syllables with equal generator, drops
  // zero exponents.
  explicit FreeWord(std::vector<Syllable> syllables);

  static FreeWord generator(int index, std::int64_t exponent = 1) {
    return FreeWord({{index, exponent}});
  }

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }
  std::size_t syllable_count() const { return syllables_.size(); }

  // Reduced length: sum of |exponent|.
  std::int64_t length() const;

  // Largest generator index used; -1 for the empty word.
  int max_generator_index() const;

  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& o) const;

  // y^-1 * this * y  (written x^y).
  FreeWord conjugated_by(const FreeWord& y) const;

  friend bool operator==(const FreeWord& a, const FreeWord& b) {
    return a.syllables_ == b.syllables_;
  }
  friend bool operator!=(const FreeWord& a, const FreeWord& b) {
    return !(a == b);
  }
  friend bool operator<(const FreeWord& a, const FreeWord& b) {
    return a.syllables_ < b.syllables_;
  }

  // Substitutes images[i] for generator i (an endomorphism of the free
  // group).  Indices out of range throw.
  FreeWord substitute(const std::vector<FreeWord>& images) const;

  std::string to_string(
      const std::vector<std::string>& generator_names = {}) const;

 private:
  std::vector<Syllable> syllables_;
};

// [u, v] = u v u^-1 v^-1.
FreeWord word_commutator(const FreeWord& u, const FreeWord& v);

}  // namespace repvar
