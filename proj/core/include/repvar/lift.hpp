#pragma once

#include "repvar/fibers.hpp"

namespace repvar {

struct LiftOptions {
  int steps = 256;              // tracking samples over the given target path
  int junction_samples = 96;    // samples for the within-fiber junction
  double tracking_fraction = 0.75;  // junction occupies [fraction, 1]
  double newton_tol = 1e-12;
  int max_newton_iters = 25;
  double fiber_tol = 1e-9;
};

// A lifted path of pairs: each sample records its own target and in-fiber
// residual.  The given target path is traversed (time-reparametrized) on
// [0, tracking_fraction]; the final within-fiber junction to the prescribed
// endpoint runs over the constant target M(1) on the remaining interval.
struct LiftedPath {
  struct Sample {
    double t;
    Mat2c A, B, target;
    double residual;
  };
  std::vector<Sample> samples;
  double step_bound = 0;

  double max_residual() const;
};

// Fixed-endpoint path lifting: predictor-corrector tracking on the
// commutator submersion, then a junction through the ab1/ab2 families (via
// path_avoiding_zeros) and the sign-flip paths, ending exactly at `end`.
// Every target sample must have trace outside {2, -2}.
LiftedPath lift_path_fixed_endpoints(const MatrixPathC& targets,
                                     const FiberPointC& start,
                                     const FiberPointC& end,
                                     const LiftOptions& opts = {});

// Newton-corrects (A, B) onto the fiber of M; returns the achieved residual.
// Exposed for the boundary-extension solver and tests.
double commutator_newton_correct(Mat2c& A, Mat2c& B, const Mat2c& M,
                                 double tol = 1e-12, int max_iters = 25);

// Diagonalization M = P diag(m, 1/m) P^-1 for tr M outside {2, -2}; the
// eigenvalue with |m| >= 1 (ties: nonnegative imaginary part) comes first and
// eigenvector phases are fixed by making the first nonzero component
// real-positive.  det P = 1.
struct Diagonalization {
  Mat2c P;
  Complex m;
};
Diagonalization diagonalize_regular(const Mat2c& M);

}  // namespace repvar
