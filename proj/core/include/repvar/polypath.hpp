#pragma once

#include <vector>

#include "repvar/scalar.hpp"

namespace repvar {

// A small multivariate polynomial over C, held as an explicit term list.
// Used to describe the nonvanishing loci (c, det A, det B) of the fiber
// families when building in-fiber junction paths.
class MultiPoly {
 public:
  struct Term {
    Complex coeff;
    std::vector<int> exponents;  // one per variable
  };

  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, Complex c);
  static MultiPoly variable(int nvars, int index);

  MultiPoly& add_term(Complex coeff, std::vector<int> exponents);

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  int total_degree() const;

  Complex eval(const std::vector<Complex>& point) const;

  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator+(const MultiPoly& o) const;

 private:
  int nvars_;
  std::vector<Term> terms_;
};

// Ascending coefficients of p restricted to the affine line
// tau -> x + tau (y - x).
std::vector<Complex> restrict_to_line(const MultiPoly& p,
                                      const std::vector<Complex>& x,
                                      const std::vector<Complex>& y);

// All roots of a univariate polynomial (ascending coefficients), via the
// companion matrix.  Trailing coefficients below a relative floor are
// trimmed.
std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs);

// A sampled polyline in C^n from x to y along (a perturbation of) the
// complex affine line through them, avoiding the zero set of p by
// semicircular detours around the roots of the restricted polynomial.
struct PolyPath {
  std::vector<double> t;                     // strictly increasing, 0..1
  std::vector<std::vector<Complex>> points;  // p != 0 at every point
};

PolyPath path_avoiding_zeros(const MultiPoly& p, std::vector<Complex> x,
                             std::vector<Complex> y, int n_samples,
                             double detour_cap = 0.1);

}  // namespace repvar
