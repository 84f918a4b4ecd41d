#pragma once

#include <vector>

#include "repvar/mat2.hpp"
#include "repvar/presentation.hpp"

namespace repvar {

inline constexpr double kRelatorTolerance = 1e-9;

// Assignment generator -> SL(2,C) for a free or surface presentation.
template <class S>
class Representation {
 public:
  Representation(Presentation pres, std::vector<Mat2<S>> images,
                 double relator_tol = kRelatorTolerance)
      : pres_(std::move(pres)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != pres_.num_generators())
      throw DomainError("representation: wrong number of generator images");
    for (const auto& m : images_)
      if (!m.sl2_flag())
        throw DomainError("representation: image without sl2 flag");
    if (pres_.is_surface()) {
      auto res = relator_residual();
      if constexpr (is_exact_v<S>) {
        if (res != 0) throw DomainError("surface relator not satisfied");
      } else {
        if (res > relator_tol)
          throw DomainError("surface relator residual above tolerance");
      }
    }
  }

  const Presentation& presentation() const { return pres_; }
  const std::vector<Mat2<S>>& images() const { return images_; }
  const Mat2<S>& image(int gen) const { return images_.at(gen); }

  // Product of images/inverses in word order; the empty word gives I.
  Mat2<S> evaluate(const FreeWord& w) const {
    Mat2<S> out = Mat2<S>::identity();
    for (const auto& [gen, exp] : w.syllables()) {
      if (gen < 0 || gen >= static_cast<int>(images_.size()))
        throw DomainError("evaluate: generator index out of range");
      Mat2<S> base = exp >= 0 ? images_[gen] : images_[gen].inverse();
      std::int64_t n = exp >= 0 ? exp : -exp;
      for (std::int64_t k = 0; k < n; ++k) out = out * base;
    }
    return out;
  }

  RealOf<S> relator_residual() const {
    return max_norm_distance(evaluate(pres_.relator()), Mat2<S>::identity());
  }

  Representation conjugated_by(const Mat2<S>& g) const {
    std::vector<Mat2<S>> imgs;
    imgs.reserve(images_.size());
    for (const auto& m : images_)
      imgs.push_back(m.conjugated_by(g).as_sl2(1e-6));
    return Representation(pres_, std::move(imgs), 1e-6);
  }

 private:
  Presentation pres_;
  std::vector<Mat2<S>> images_;
};

template <class S>
struct Character {
  std::vector<FreeWord> words;
  std::vector<S> traces;

  const S& trace_of(const FreeWord& w) const {
    for (std::size_t i = 0; i < words.size(); ++i)
      if (words[i] == w) return traces[i];
    throw DomainError("character: word not in the recorded list");
  }
};

// Trace of evaluate(w) per word, same order.
template <class S>
Character<S> character_of(const Representation<S>& rho,
                          const std::vector<FreeWord>& words) {
  Character<S> x;
  x.words = words;
  x.traces.reserve(words.size());
  for (const auto& w : words) x.traces.push_back(rho.evaluate(w).trace());
  return x;
}

using RepresentationQ = Representation<GaussianRational>;
using RepresentationC = Representation<Complex>;

}  // namespace repvar
