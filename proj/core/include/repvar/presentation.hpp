#pragma once

#include <string>
#include <vector>

#include "repvar/word.hpp"

namespace repvar {

// A free group of given rank, or a closed orientable surface group of genus
// g >= 2 with the single relator prod_{i=1..g} [alpha_i, beta_i].
//
// Generator indexing: surface groups store alpha_i at index 2(i-1) and beta_i
// at 2(i-1)+1 (i is 1-based); free groups number their generators 0..rank-1.
class Presentation {
 public:
  enum class Kind { free_group, surface_group };

  static Presentation free_group(int rank);
  static Presentation surface(int genus);

  Kind kind() const { return kind_; }
  bool is_surface() const { return kind_ == Kind::surface_group; }
  int genus() const;
  int rank() const;
  int num_generators() const;

  // Index of alpha_i / beta_i (1-based handle index; surface groups only).
  int alpha(int i) const;
  int beta(int i) const;

  // Surface groups only: the defining relation, reduced length 4g.
  FreeWord relator() const;

  std::string generator_name(int index) const;
  std::vector<std::string> generator_names() const;

  friend bool operator==(const Presentation& p, const Presentation& q) {
    return p.kind_ == q.kind_ && p.size_ == q.size_;
  }

 private:
  Presentation(Kind kind, int size) : kind_(kind), size_(size) {}
  Kind kind_;
  int size_;  // rank for free groups, genus for surface groups
};

}  // namespace repvar
