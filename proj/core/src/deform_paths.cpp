#include "repvar/deform.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

namespace repvar {

namespace {

// N(w)/D(w): the closed form of the product's lower-left entry.
struct LowerLeft {
  Complex a, b, c, p, q;
  Complex N(Complex w) const {
    return -a * a * q - (b + p + q) * w * w + a * w * (2.0 * q - b * w);
  }
  Complex Np(Complex w) const {
    return -2.0 * (b + p + q) * w + a * (2.0 * q - 2.0 * b * w);
  }
  Complex D(Complex w) const {
    return (1.0 + a) * p * q + b * (p * w * w + q * (1.0 + w) * (1.0 + w));
  }
  Complex Dp(Complex w) const {
    return b * (2.0 * p * w + 2.0 * q * (1.0 + w));
  }
  Complex f(Complex w) const { return N(w) / D(w) - c; }
  Complex fp(Complex w) const {
    Complex d = D(w);
    return (Np(w) * d - N(w) * Dp(w)) / (d * d);
  }
};

}  // namespace

ParabolicProductSolution parabolic_product_solve(const Complex& a,
                                                 const Complex& b,
                                                 const Complex& c,
                                                 const Complex& p,
                                                 const Complex& q,
                                                 double smallness, double tol) {
  if (std::abs(p + q) < 1e-12)
    throw DomainError("parabolic product solve needs p + q != 0");
  for (const Complex* small : {&a, &b, &c})
    if (std::abs(*small) > smallness)
      throw DomainError("parabolic product inputs exceed the smallness bound");

  LowerLeft eq{a, b, c, p, q};

  // Seeds: roots of the quadratic obtained by clearing the denominator,
  // N(w) - c D(w) = 0.
  Complex A2 = -(b + p + q) - a * b - c * b * (p + q);
  Complex A1 = 2.0 * a * q - 2.0 * c * b * q;
  Complex A0 = -a * a * q - c * ((1.0 + a) * p * q + b * q);
  std::vector<Complex> seeds;
  if (std::abs(A2) > 1e-14) {
    Complex disc = std::sqrt(A1 * A1 - 4.0 * A2 * A0);
    seeds.push_back((-A1 + disc) / (2.0 * A2));
    seeds.push_back((-A1 - disc) / (2.0 * A2));
  } else if (std::abs(A1) > 1e-14) {
    seeds.push_back(-A0 / A1);
  } else {
    seeds.push_back(Complex(0, 0));
  }

  bool solved = false;
  Complex w_best = 0;
  double best_abs = 0;
  for (Complex w : seeds) {
    for (int it = 0; it < 60; ++it) {
      Complex fw = eq.f(w);
      if (std::abs(fw) <= tol / 10) break;
      Complex d = eq.fp(w);
      if (std::abs(d) < 1e-16) break;
      w -= fw / d;
    }
    if (std::abs(eq.f(w)) <= tol) {
      if (!solved || std::abs(w) < best_abs) {
        solved = true;
        w_best = w;
        best_abs = std::abs(w);
      }
    }
  }
  if (!solved)
    throw NumericError("parabolic product solve: Newton did not converge");

  Complex w = w_best;
  Mat2c C = parabolic_commutator_M<Complex>(
      p, (a - w + b * w * w / q) / (1.0 + w), b + b * w);
  Mat2c D = parabolic_commutator_M<Complex>(q, w, Complex(0, 0));
  Mat2c CD = C * D;
  Mat2c want(1.0 + a, b, c, (1.0 + b * c) / (1.0 + a), true);
  if (!CD.entrywise_close(want, tol * 10))
    throw NumericError("parabolic product solve: product misses the target");

  double denom = std::sqrt(std::abs(c)) + std::abs(a);
  ParabolicProductSolution out{w, C, D, CD,
                               denom > 0 ? std::abs(w) / denom : 0.0};
  return out;
}

namespace {

// Deterministic bump heights for the interior-avoidance paths.
const double kBumps[] = {0, 0.11, -0.11, 0.23, -0.23, 0.47,
                         -0.47, 0.83, -0.83, 1.31, -1.31};

// Segment plus i*h*sin(pi t): endpoints exact, interior pushed off the
// forbidden values.
Complex bump_path(const Complex& x0, const Complex& x1, double h, double t) {
  return x0 + t * (x1 - x0) + Complex(0, h) * std::sin(M_PI * t);
}

double choose_bump(const Complex& x0, const Complex& x1,
                   const std::vector<Complex>& forbidden, int n_samples,
                   double margin = 1e-7) {
  for (double h : kBumps) {
    bool ok = true;
    for (int k = 1; k + 1 < n_samples && ok; ++k) {
      Complex x = bump_path(x0, x1, h, double(k) / (n_samples - 1));
      for (const Complex& f : forbidden)
        if (std::abs(x - f) <= margin) {
          ok = false;
          break;
        }
    }
    if (ok) return h;
  }
  throw NumericError("no bump height clears the forbidden values");
}

}  // namespace

MatrixPathC reducible_nonabelian_path(const UpperTriangularData& rho0,
                                      const UpperTriangularData& rho1,
                                      int n_samples) {
  if (n_samples < 3) throw DomainError("need at least 3 samples");
  for (const auto* r : {&rho0, &rho1})
    if (std::abs(r->lambda) < 1e-14 || std::abs(r->mu) < 1e-14)
      throw DomainError("endpoint diagonal entries must be nonzero");

  const std::vector<Complex> bad = {Complex(0), Complex(1), Complex(-1)};
  double h_lambda =
      choose_bump(rho0.lambda, rho1.lambda, bad, n_samples);
  double h_mu = choose_bump(rho0.mu, rho1.mu, bad, n_samples);
  double h_d = choose_bump(rho0.d, rho1.d, {Complex(0)}, n_samples);

  auto lambda_at = [&](double t) {
    return bump_path(rho0.lambda, rho1.lambda, h_lambda, t);
  };
  auto mu_at = [&](double t) { return bump_path(rho0.mu, rho1.mu, h_mu, t); };
  auto d_at = [&](double t) { return bump_path(rho0.d, rho1.d, h_d, t); };
  auto g_at = [&](double t) {
    Complex l = lambda_at(t), m = mu_at(t), d = d_at(t);
    return d * l * (m * m - 1.0) / (m * (l * l - 1.0));
  };

  // e path: segment + bump, avoiding the moving value g(t) at the interior
  // sample resolution.
  bool found_e = false;
  double h_e = 0;
  for (double h : kBumps) {
    bool ok = true;
    for (int k = 1; k + 1 < n_samples && ok; ++k) {
      double t = double(k) / (n_samples - 1);
      Complex e = bump_path(rho0.e, rho1.e, h, t);
      if (std::abs(e - g_at(t)) <= 1e-7) ok = false;
    }
    if (ok) {
      h_e = h;
      found_e = true;
      break;
    }
  }
  if (!found_e) throw NumericError("no bump height for e_t clears g(t)");

  MatrixPathC path;
  for (int k = 0; k < n_samples; ++k) {
    double t = double(k) / (n_samples - 1);
    Complex l = lambda_at(t), m = mu_at(t), d = d_at(t);
    Complex e = bump_path(rho0.e, rho1.e, h_e, t);
    Mat2c Ma(l, d, Complex(0), 1.0 / l, true);
    Mat2c Mb(m, e, Complex(0), 1.0 / m, true);
    path.samples.push_back({t, {Ma, Mb}});
  }
  double bound = 0;
  for (std::size_t i = 1; i < path.samples.size(); ++i)
    for (int j = 0; j < 2; ++j)
      bound = std::max(bound, to_double_real<Complex>(max_norm_distance(
                                  path.samples[i].mats[j],
                                  path.samples[i - 1].mats[j])));
  path.step_bound = bound;
  return path;
}

namespace {

const Mat2c kBasis[3] = {
    Mat2c(Complex(1), Complex(0), Complex(0), Complex(-1)),
    Mat2c(Complex(0), Complex(1), Complex(0), Complex(0)),
    Mat2c(Complex(0), Complex(0), Complex(1), Complex(0)),
};

Mat2c expm_basis(const Eigen::VectorXcd& coeffs, int offset) {
  Mat2c X = Mat2c::zero();
  for (int k = 0; k < 3; ++k) X = X + coeffs(offset + k) * kBasis[k];
  Complex theta2 = -X.det();
  Complex theta = std::sqrt(theta2);
  Complex ch, sh;
  if (std::abs(theta) < 1e-8) {
    ch = 1.0 + theta2 / 2.0;
    sh = 1.0 + theta2 / 6.0;
  } else {
    ch = std::cosh(theta);
    sh = std::sinh(theta) / theta;
  }
  return Mat2c(ch + sh * X.a(), sh * X.b(), sh * X.c(), ch + sh * X.d(), true);
}

}  // namespace

RepresentationC extend_boundary_deformation(
    const Presentation& pres, const std::vector<Mat2c>& images,
    const std::vector<int>& fixed_gens, const BoundaryTarget<Complex>& target,
    double max_norm) {
  if (!pres.is_surface())
    throw DomainError("extension solver needs a surface presentation");
  const int g = pres.genus();
  if (static_cast<int>(images.size()) != 2 * g)
    throw DomainError("wrong number of generator images");
  std::vector<bool> fixed(2 * g, false);
  for (int idx : fixed_gens) {
    if (idx < 0 || idx >= 2 * g) throw DomainError("fixed index out of range");
    fixed[idx] = true;
  }
  // The complement must be whole trailing handles, at least two of them.
  int first_free_handle = -1;
  for (int i = 1; i <= g; ++i) {
    bool fa = fixed[pres.alpha(i)], fb = fixed[pres.beta(i)];
    if (fa != fb) throw DomainError("complement must consist of whole handles");
    if (!fa && first_free_handle < 0) first_free_handle = i;
    if (fa && first_free_handle >= 0)
      throw DomainError("complement handles must be a trailing block");
  }
  if (first_free_handle < 0 || g - first_free_handle + 1 < 2)
    throw DomainError("complement must be a genus >= 2 subsurface");

  std::vector<Mat2c> work = images;
  auto tail_product = [&]() {
    Mat2c prod = Mat2c::identity();
    for (int i = first_free_handle; i <= g; ++i)
      prod = prod * mat_commutator(work[pres.alpha(i)], work[pres.beta(i)]);
    return prod;
  };

  const double current_gap = to_double_real<Complex>(
      max_norm_distance(tail_product(), target.matrix));
  if (current_gap <= 1e-12) {
    return RepresentationC(pres, std::move(work), 1e-7);
  }
  if (current_gap > max_norm * 1.0001 + 1e-12)
    throw DomainError("target boundary farther than max_norm from current");

  // Abelian route: every complement image diagonal, target near identity.
  bool all_diagonal = true;
  for (int i = first_free_handle; i <= g && all_diagonal; ++i)
    for (int idx : {pres.alpha(i), pres.beta(i)})
      if (std::abs(work[idx].b()) > 1e-12 || std::abs(work[idx].c()) > 1e-12)
        all_diagonal = false;
  if (all_diagonal) {
    const Mat2c& T = target.matrix;
    Complex x = T.a() - 1.0, y = T.b(), z = T.c();
    auto [C, D, CD] = near_identity_product(x, y, z, 0.5);
    if (!CD.entrywise_close(T, 1e-9))
      throw NumericError("abelian route: target is not in product form");
    int h1 = first_free_handle, h2 = first_free_handle + 1;
    auto realize = [&](int handle, const Mat2c& comm_target) {
      Complex pp = work[pres.alpha(handle)].a();
      Complex qq = work[pres.beta(handle)].a();
      auto [Ah, Bh, ch] = abelian_diagonal_commutator(
          pp, qq, comm_target.b(), comm_target.c(), 0.5);
      (void)ch;
      work[pres.alpha(handle)] = Ah;
      work[pres.beta(handle)] = Bh;
    };
    realize(h1, C);
    realize(h2, D);
    return RepresentationC(pres, std::move(work), 1e-7);
  }

  // Generic route: damped Newton on the product of complement commutators.
  const int handles = g - first_free_handle + 1;
  const int dim = 6 * handles;
  const double displacement_budget = 10.0 * max_norm;
  double moved = 0;

  for (int iter = 0; iter < 80; ++iter) {
    Mat2c R = tail_product() - target.matrix;
    double res = to_double_real<Complex>(R.max_norm());
    if (res <= 1e-11) break;
    // d(prod)/d(handle tangents): prefix * dC_i * suffix.
    std::vector<Mat2c> comms(handles);
    for (int h = 0; h < handles; ++h) {
      int i = first_free_handle + h;
      comms[h] = mat_commutator(work[pres.alpha(i)], work[pres.beta(i)]);
    }
    std::vector<Mat2c> prefix(handles + 1, Mat2c::identity());
    for (int h = 0; h < handles; ++h) prefix[h + 1] = prefix[h] * comms[h];
    std::vector<Mat2c> suffix(handles + 1, Mat2c::identity());
    for (int h = handles - 1; h >= 0; --h)
      suffix[h] = comms[h] * suffix[h + 1];

    Eigen::MatrixXcd J(4, dim);
    for (int h = 0; h < handles; ++h) {
      int i = first_free_handle + h;
      const Mat2c &A = work[pres.alpha(i)], &B = work[pres.beta(i)];
      Mat2c Ai = A.inverse(), Bi = B.inverse();
      for (int k = 0; k < 3; ++k) {
        const Mat2c& E = kBasis[k];
        Mat2c dA = A * E * B * Ai * Bi - A * B * E * Ai * Bi;
        Mat2c dB = A * B * E * Ai * Bi - A * B * Ai * E * Bi;
        Mat2c colA = prefix[h] * dA * suffix[h + 1];
        Mat2c colB = prefix[h] * dB * suffix[h + 1];
        for (int r = 0; r < 4; ++r) {
          J(r, 6 * h + k) = colA.at(r / 2, r % 2);
          J(r, 6 * h + 3 + k) = colB.at(r / 2, r % 2);
        }
      }
    }
    Eigen::VectorXcd rhs(4);
    rhs << -R.a(), -R.b(), -R.c(), -R.d();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    Eigen::VectorXcd step = svd.solve(rhs);

    double step_norm = step.lpNorm<Eigen::Infinity>();
    double damp = 1.0;
    if (moved + step_norm > displacement_budget)
      damp = std::max(0.0, (displacement_budget - moved) / step_norm);
    if (damp <= 0)
      throw NumericError(
          "extension solver: displacement budget exhausted before "
          "convergence (residual " +
          std::to_string(res) + ")");
    for (int h = 0; h < handles; ++h) {
      int i = first_free_handle + h;
      work[pres.alpha(i)] =
          (work[pres.alpha(i)] * expm_basis(damp * step, 6 * h)).as_sl2(1e-6);
      work[pres.beta(i)] =
          (work[pres.beta(i)] * expm_basis(damp * step, 6 * h + 3))
              .as_sl2(1e-6);
    }
    moved += damp * step_norm;
  }
  Mat2c R = tail_product() - target.matrix;
  if (to_double_real<Complex>(R.max_norm()) > 1e-9)
    throw NumericError("extension solver: Newton did not reach the target");
  return RepresentationC(pres, std::move(work), 1e-7);
}

}  // namespace repvar
