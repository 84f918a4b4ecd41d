#include "repvar/lift.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>

#include "repvar/polypath.hpp"

namespace repvar {

namespace {

const Mat2c kSl2Basis[3] = {
    Mat2c(Complex(1), Complex(0), Complex(0), Complex(-1)),
    Mat2c(Complex(0), Complex(1), Complex(0), Complex(0)),
    Mat2c(Complex(0), Complex(0), Complex(1), Complex(0)),
};

// exp of X in sl2: cosh(theta) I + sinh(theta)/theta X with theta^2 = -det X.
Mat2c expm_sl2(const Mat2c& X) {
  Complex theta2 = -X.det();
  Complex theta = std::sqrt(theta2);
  Complex ch, sh_over;
  if (std::abs(theta) < 1e-8) {
    ch = Complex(1) + theta2 / 2.0;
    sh_over = Complex(1) + theta2 / 6.0;
  } else {
    ch = std::cosh(theta);
    sh_over = std::sinh(theta) / theta;
  }
  return Mat2c(ch + sh_over * X.a(), sh_over * X.b(), sh_over * X.c(),
               ch + sh_over * X.d(), true);
}

// Analytic differential of (A,B) -> [A,B] in the right-translated sl2 x sl2
// chart: columns are d/de [A e^{eE_k}, B] and [A, B e^{eE_k}] at e = 0.
Eigen::Matrix<Complex, 4, 6> commutator_jacobian(const Mat2c& A,
                                                 const Mat2c& B) {
  Eigen::Matrix<Complex, 4, 6> J;
  Mat2c Ai = A.inverse(), Bi = B.inverse();
  for (int k = 0; k < 3; ++k) {
    const Mat2c& E = kSl2Basis[k];
    Mat2c dA = A * E * B * Ai * Bi - A * B * E * Ai * Bi;
    Mat2c dB = A * B * E * Ai * Bi - A * B * Ai * E * Bi;
    for (int r = 0; r < 4; ++r) {
      J(r, k) = dA.at(r / 2, r % 2);
      J(r, 3 + k) = dB.at(r / 2, r % 2);
    }
  }
  return J;
}

Mat2c normalize_det1(const Mat2c& M) {
  Complex k = Complex(1) / std::sqrt(M.det());
  return Mat2c(k * M.a(), k * M.b(), k * M.c(), k * M.d(), true);
}

void apply_tangent(Mat2c& A, Mat2c& B, const Eigen::Matrix<Complex, 6, 1>& d) {
  Mat2c XA = Mat2c::zero(), XB = Mat2c::zero();
  for (int k = 0; k < 3; ++k) {
    XA = XA + d(k) * kSl2Basis[k];
    XB = XB + d(3 + k) * kSl2Basis[k];
  }
  A = normalize_det1(A * expm_sl2(XA));
  B = normalize_det1(B * expm_sl2(XB));
}

Eigen::Matrix<Complex, 6, 1> min_norm_solve(
    const Eigen::Matrix<Complex, 4, 6>& J,
    const Eigen::Matrix<Complex, 4, 1>& rhs) {
  Eigen::MatrixXcd Jd = J;
  Eigen::VectorXcd r = rhs;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(Jd);
  cod.setThreshold(1e-12);
  return cod.solve(r);
}

Eigen::Matrix<Complex, 4, 1> residual_vector(const Mat2c& A, const Mat2c& B,
                                             const Mat2c& M) {
  Mat2c R = mat_commutator(A, B) - M;
  Eigen::Matrix<Complex, 4, 1> r;
  r << R.a(), R.b(), R.c(), R.d();
  return r;
}

}  // namespace

double commutator_newton_correct(Mat2c& A, Mat2c& B, const Mat2c& M,
                                 double tol, int max_iters) {
  double res = to_double_real<Complex>(
      max_norm_distance(mat_commutator(A, B), M));
  for (int it = 0; it < max_iters && res > tol; ++it) {
    auto J = commutator_jacobian(A, B);
    auto step = min_norm_solve(J, -residual_vector(A, B, M));
    Mat2c An = A, Bn = B;
    apply_tangent(An, Bn, step);
    double next = to_double_real<Complex>(
        max_norm_distance(mat_commutator(An, Bn), M));
    // Backtracking keeps the corrector contractive near the fiber.
    double damp = 1.0;
    while (next > res && damp > 1.0 / 64) {
      damp /= 2;
      An = A;
      Bn = B;
      apply_tangent(An, Bn, (damp * step).eval());
      next = to_double_real<Complex>(
          max_norm_distance(mat_commutator(An, Bn), M));
    }
    if (next >= res && res <= 1e-15) break;
    if (next > res) return res;  // stalled; caller decides
    A = An;
    B = Bn;
    res = next;
  }
  return res;
}

int commutator_jacobian_rank(const Mat2c& A, const Mat2c& B,
                             double sv_threshold) {
  Eigen::MatrixXcd J = commutator_jacobian(A, B);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > sv_threshold) ++rank;
  return rank;
}

Diagonalization diagonalize_regular(const Mat2c& M) {
  Complex tr = M.trace();
  Complex disc = tr * tr - Complex(4);
  if (std::abs(disc) < 1e-12)
    throw DomainError("diagonalize_regular: trace is +-2");
  Complex root = std::sqrt(disc);
  Complex m1 = (tr + root) / 2.0, m2 = (tr - root) / 2.0;
  Complex m;
  if (std::abs(m1) != std::abs(m2))
    m = std::abs(m1) > std::abs(m2) ? m1 : m2;
  else
    m = m1.imag() >= 0 ? m1 : m2;

  auto eigenvector = [&](Complex lambda) {
    // Kernel of M - lambda I; take the numerically larger row construction.
    Complex v1z = M.b(), v1w = lambda - M.a();
    Complex v2z = lambda - M.d(), v2w = M.c();
    Complex z, w;
    if (std::abs(v1z) + std::abs(v1w) >= std::abs(v2z) + std::abs(v2w)) {
      z = v1z;
      w = v1w;
    } else {
      z = v2z;
      w = v2w;
    }
    // Phase convention: first nonzero component real-positive.
    Complex lead = std::abs(z) > 1e-14 ? z : w;
    Complex phase = lead / std::abs(lead);
    z /= phase;
    w /= phase;
    double n = std::sqrt(std::norm(z) + std::norm(w));
    return std::pair<Complex, Complex>{z / n, w / n};
  };

  auto [z1, w1] = eigenvector(m);
  auto [z2, w2] = eigenvector(Complex(1) / m);
  Mat2c P(z1, z2, w1, w2, false);
  Complex dp = P.det();
  if (std::abs(dp) < 1e-12)
    throw NumericError("diagonalize_regular: defective eigenvectors");
  Complex scale = std::sqrt(dp);
  P = Mat2c(P.a() / scale, P.b() / scale, P.c() / scale, P.d() / scale, true);
  return {P, m};
}

MatrixPathC sign_flip_path(const Complex& m, const Complex& sqrt_m, int eps_a,
                           int eps_b, int n_samples, double tol) {
  if (std::abs(m) < 1e-12 || std::abs(m - Complex(1)) < 1e-12 ||
      std::abs(m + Complex(1)) < 1e-12)
    throw DomainError("sign_flip_path: m must avoid {0, 1, -1}");
  if (std::abs(sqrt_m * sqrt_m - m) > 1e-9)
    throw DomainError("sign_flip_path: sqrt_m^2 != m");
  if ((eps_a != 1 && eps_a != -1) || (eps_b != 1 && eps_b != -1))
    throw DomainError("sign_flip_path: signs must be +-1");
  if (n_samples < 2) throw DomainError("sign_flip_path: need >= 2 samples");

  const Mat2c A0(sqrt_m, m - Complex(1), Complex(0), Complex(1) / sqrt_m,
                 true);
  const Mat2c B0(Complex(1) / sqrt_m, Complex(0), Complex(1), sqrt_m, true);
  const Mat2c target(m, Complex(0), Complex(0), Complex(1) / m, true);

  // theta-parametrized families; e = exp(i theta) is substituted exactly at
  // the endpoints so that endpoint matrices are exact.
  auto b_flip = [&](Complex e) {  // (A0, s B0) -> (A0, -s B0) as theta: 0->pi
    Mat2c B(e / sqrt_m, e - Complex(1) / e, e, e * sqrt_m, true);
    return std::pair<Mat2c, Mat2c>{A0, B};
  };
  auto a_flip = [&](Complex e) {  // (s A0, B0) -> (-s A0, B0)
    Mat2c A(e * sqrt_m, e * (m - Complex(1)),
            (e - Complex(1) / e) / (m - Complex(1)), e / sqrt_m, true);
    return std::pair<Mat2c, Mat2c>{A, B0};
  };

  struct Segment {
    bool flips_b;       // else flips A
    int sign_a, sign_b; // global signs multiplying the displayed family
  };
  std::vector<Segment> segments;
  if (eps_b < 0) segments.push_back({true, 1, 1});
  if (eps_a < 0) segments.push_back({false, 1, eps_b});

  MatrixPathC path;
  auto push = [&](double t, Mat2c A, Mat2c B) {
    FiberPointC check(A, B, target, tol);  // validates the residual
    path.samples.push_back({t, {std::move(A), std::move(B)}});
  };

  if (segments.empty()) {  // (+,+): the constant path
    for (int k = 0; k < n_samples; ++k)
      push(double(k) / (n_samples - 1), A0, B0);
    path.step_bound = 0;
    return path;
  }

  int per = std::max(
      2, (n_samples - 1) / static_cast<int>(segments.size()));
  double t0 = 0;
  for (std::size_t si = 0; si < segments.size(); ++si) {
    const Segment& seg = segments[si];
    double t1 = double(si + 1) / segments.size();
    for (int k = (si == 0 ? 0 : 1); k <= per; ++k) {
      double u = double(k) / per;
      Complex e = (k == 0)    ? Complex(1)
                  : (k == per) ? Complex(-1)
                               : std::exp(Complex(0, M_PI * u));
      auto [A, B] = seg.flips_b ? b_flip(e) : a_flip(e);
      Complex sa(seg.sign_a), sb(seg.sign_b);
      push(t0 + u * (t1 - t0), Mat2c(sa * A.a(), sa * A.b(), sa * A.c(),
                                     sa * A.d(), true),
           Mat2c(sb * B.a(), sb * B.b(), sb * B.c(), sb * B.d(), true));
    }
    t0 = t1;
  }

  double bound = 0;
  for (std::size_t i = 1; i < path.samples.size(); ++i) {
    double d = 0;
    for (int j = 0; j < 2; ++j)
      d = std::max(d, to_double_real<Complex>(max_norm_distance(
                          path.samples[i].mats[j], path.samples[i - 1].mats[j])));
    bound = std::max(bound, d);
  }
  path.step_bound = bound;
  return path;
}

namespace {

// ---- junction machinery: connect two points of the fiber of diag(m, 1/m) --

struct Quintuple {
  bool family_c;  // true: S1 chart (c != 0), false: S2 chart (a != 0)
  std::vector<Complex> v;  // (a, b, c, s, t)
};

Quintuple fiber_coordinates(const Mat2c& A, const Mat2c& B, const Complex& m) {
  Quintuple q;
  Complex a = B.a(), b = B.b(), c = B.c();
  if (std::abs(c) >= std::abs(a)) {
    q.family_c = true;
    q.v = {a, b, c, B.c() == Complex(0) ? Complex(0) : A.c() / c, A.d() / c};
  } else {
    q.family_c = false;
    Complex denom = a * (m - Complex(1));
    q.v = {a, b, c, A.b() / denom, A.c() / denom};
  }
  return q;
}

std::pair<Mat2c, Mat2c> family_matrices(const Quintuple& q, const Complex& m) {
  const Complex &a = q.v[0], &b = q.v[1], &c = q.v[2], &s = q.v[3], &t = q.v[4];
  Mat2c B(a, b, c, a * m, false);
  if (q.family_c)
    return {Mat2c(c * m * t, b * m * s + a * m * (m - Complex(1)) * t, c * s,
                  c * t, false),
            B};
  return {Mat2c(c * s - b * m * t, a * (m - Complex(1)) * s,
                a * (m - Complex(1)) * t, (c / m) * s - b * t, false),
          B};
}

// det A, det B and the chart-defining coordinate as polynomials in
// (a, b, c, s, t) for the given family.
MultiPoly family_nonvanishing_poly(bool family_c, const Complex& m) {
  MultiPoly detB(5);
  detB.add_term(m, {2, 0, 0, 0, 0});
  detB.add_term(Complex(-1), {0, 1, 1, 0, 0});
  MultiPoly detA(5);
  if (family_c) {
    detA.add_term(m, {0, 0, 2, 0, 2});
    detA.add_term(-m, {0, 1, 1, 2, 0});
    detA.add_term(-m * (m - Complex(1)), {1, 0, 1, 1, 1});
  } else {
    detA.add_term(Complex(1) / m, {0, 0, 2, 2, 0});
    detA.add_term(m, {0, 2, 0, 0, 2});
    detA.add_term(Complex(-2), {0, 1, 1, 1, 1});
    detA.add_term(-(m - Complex(1)) * (m - Complex(1)), {2, 0, 0, 1, 1});
  }
  MultiPoly chart = MultiPoly::variable(5, family_c ? 2 : 0);
  return chart * detA * detB;
}

Quintuple base_quintuple(bool family_c, const Complex& sqrt_m) {
  Quintuple q;
  q.family_c = family_c;
  if (family_c)
    q.v = {Complex(1) / sqrt_m, Complex(0), Complex(1), Complex(0),
           Complex(1) / sqrt_m};
  else
    q.v = {Complex(1) / sqrt_m, Complex(0), Complex(1), sqrt_m, Complex(0)};
  return q;
}

// Continuous square-root normalization along a leg.
struct LegResult {
  std::vector<std::pair<Mat2c, Mat2c>> samples;  // sl2 pairs, in-fiber
  int sign_a = 1, sign_b = 1;  // the leg ends at (sign_a A0, sign_b B0)
};

Mat2c scale_mat(const Mat2c& M, Complex k, bool sl2) {
  return Mat2c(k * M.a(), k * M.b(), k * M.c(), k * M.d(), sl2);
}

LegResult leg_to_base(const Quintuple& from, const Complex& m,
                      const Complex& sqrt_m, int samples,
                      const Mat2c& A0, const Mat2c& B0) {
  Quintuple base = base_quintuple(from.family_c, sqrt_m);
  MultiPoly guard = family_nonvanishing_poly(from.family_c, m);
  PolyPath pp = path_avoiding_zeros(guard, from.v, base.v, samples);

  LegResult leg;
  Complex prev_sa(1), prev_sb(1);  // 1/sqrt(det) continuation, starts at +1
  for (std::size_t i = 0; i < pp.points.size(); ++i) {
    Quintuple q{from.family_c, pp.points[i]};
    auto [Ag, Bg] = family_matrices(q, m);
    Complex ra = Complex(1) / std::sqrt(Ag.det());
    Complex rb = Complex(1) / std::sqrt(Bg.det());
    if (std::abs(ra - prev_sa) > std::abs(ra + prev_sa)) ra = -ra;
    if (std::abs(rb - prev_sb) > std::abs(rb + prev_sb)) rb = -rb;
    prev_sa = ra;
    prev_sb = rb;
    leg.samples.emplace_back(scale_mat(Ag, ra, true), scale_mat(Bg, rb, true));
  }
  // Ends at (+-A0, +-B0); classify and substitute the exact matrices.
  const auto& [Alast, Blast] = leg.samples.back();
  leg.sign_a = to_double_real<Complex>(max_norm_distance(Alast, A0)) <=
                       to_double_real<Complex>(max_norm_distance(Alast, -A0))
                   ? 1
                   : -1;
  leg.sign_b = to_double_real<Complex>(max_norm_distance(Blast, B0)) <=
                       to_double_real<Complex>(max_norm_distance(Blast, -B0))
                   ? 1
                   : -1;
  Mat2c Ae = leg.sign_a > 0 ? A0 : -A0;
  Mat2c Be = leg.sign_b > 0 ? B0 : -B0;
  if (to_double_real<Complex>(max_norm_distance(Alast, Ae)) > 1e-6 ||
      to_double_real<Complex>(max_norm_distance(Blast, Be)) > 1e-6)
    throw NumericError("junction leg did not reach the base point");
  leg.samples.back() = {Ae, Be};
  return leg;
}

}  // namespace

double LiftedPath::max_residual() const {
  double r = 0;
  for (const auto& s : samples) r = std::max(r, s.residual);
  return r;
}

LiftedPath lift_path_fixed_endpoints(const MatrixPathC& targets,
                                     const FiberPointC& start,
                                     const FiberPointC& end,
                                     const LiftOptions& opts) {
  targets.validate();
  for (const auto& s : targets.samples) {
    if (s.mats.size() != 1)
      throw DomainError("target path must carry one matrix per sample");
    Complex tr = s.mats[0].trace();
    if (std::abs(tr - Complex(2)) < 1e-9 || std::abs(tr + Complex(2)) < 1e-9)
      throw DomainError("target path trace hits +-2");
  }
  auto target_mismatch = [&](const Mat2c& got, const Mat2c& want) {
    return to_double_real<Complex>(max_norm_distance(got, want)) > 1e-7;
  };
  if (target_mismatch(start.target, targets.samples.front().mats[0]) ||
      target_mismatch(end.target, targets.samples.back().mats[0]))
    throw DomainError("endpoint fiber points do not match the target path");

  // Piecewise-linear interpolation of the target path, renormalized to det 1.
  auto target_at = [&](double u) {
    const auto& samp = targets.samples;
    if (u <= 0) return samp.front().mats[0];
    if (u >= 1) return samp.back().mats[0];
    std::size_t hi = 1;
    while (samp[hi].t < u) ++hi;
    double w = (u - samp[hi - 1].t) / (samp[hi].t - samp[hi - 1].t);
    const Mat2c &L = samp[hi - 1].mats[0], &R = samp[hi].mats[0];
    Mat2c M(L.a() + w * (R.a() - L.a()), L.b() + w * (R.b() - L.b()),
            L.c() + w * (R.c() - L.c()), L.d() + w * (R.d() - L.d()), false);
    Complex r = std::sqrt(M.det());
    return Mat2c(M.a() / r, M.b() / r, M.c() / r, M.d() / r, true);
  };

  LiftedPath out;
  const double tau = opts.tracking_fraction;
  Mat2c A = start.A, B = start.B;
  out.samples.push_back(
      {0.0, A, B, target_at(0),
       to_double_real<Complex>(max_norm_distance(mat_commutator(A, B),
                                                 target_at(0)))});

  // Predictor-corrector tracking with adaptive bisection.
  double u = 0;
  const double du = 1.0 / opts.steps;
  int emitted = 0;
  while (emitted < opts.steps) {
    double u_next = std::min(1.0, u + du);
    double step = u_next - u;
    int depth = 0;
    double at = u;
    Mat2c Ac = A, Bc = B;
    while (at < u_next - 1e-15) {
      double target_u = std::min(u_next, at + step);
      Mat2c Atry = Ac, Btry = Bc;
      double res = commutator_newton_correct(Atry, Btry, target_at(target_u),
                                             opts.newton_tol,
                                             opts.max_newton_iters);
      if (res > opts.fiber_tol) {
        step /= 2;
        if (++depth > 30)
          throw NumericError("corrector divergence at t = " +
                             std::to_string(target_u * tau));
        continue;
      }
      Ac = Atry;
      Bc = Btry;
      at = target_u;
    }
    A = Ac;
    B = Bc;
    u = u_next;
    ++emitted;
    Mat2c M = target_at(u);
    out.samples.push_back(
        {u * tau, A, B, M,
         to_double_real<Complex>(
             max_norm_distance(mat_commutator(A, B), M))});
  }

  // Junction inside the fiber of M(1), conjugated to diagonal form.
  Mat2c M1 = targets.samples.back().mats[0];
  Diagonalization diag = diagonalize_regular(M1);
  const Complex m = diag.m;
  const Complex sqrt_m = std::sqrt(m);
  Mat2c Pinv = diag.P.inverse();
  auto to_diag_frame = [&](const Mat2c& X) {
    return X.conjugated_by(Pinv);
  };
  Mat2c A0(sqrt_m, m - Complex(1), Complex(0), Complex(1) / sqrt_m, true);
  Mat2c B0(Complex(1) / sqrt_m, Complex(0), Complex(1), sqrt_m, true);

  Quintuple q_from =
      fiber_coordinates(to_diag_frame(A), to_diag_frame(B), m);
  Quintuple q_to =
      fiber_coordinates(to_diag_frame(end.A), to_diag_frame(end.B), m);

  int leg_samples = std::max(8, opts.junction_samples / 3);
  LegResult leg1 = leg_to_base(q_from, m, sqrt_m, leg_samples, A0, B0);
  LegResult leg2 = leg_to_base(q_to, m, sqrt_m, leg_samples, A0, B0);

  std::vector<std::pair<Mat2c, Mat2c>> junction = leg1.samples;
  if (leg1.sign_b != leg2.sign_b) {
    MatrixPathC flip = sign_flip_path(m, sqrt_m, 1, -1, leg_samples);
    for (std::size_t i = 1; i < flip.samples.size(); ++i) {
      Complex sa(leg1.sign_a), sb(leg1.sign_b);
      junction.emplace_back(scale_mat(flip.samples[i].mats[0], sa, true),
                            scale_mat(flip.samples[i].mats[1], sb, true));
    }
  }
  if (leg1.sign_a != leg2.sign_a) {
    MatrixPathC flip = sign_flip_path(m, sqrt_m, -1, 1, leg_samples);
    for (std::size_t i = 1; i < flip.samples.size(); ++i) {
      Complex sa(leg1.sign_a), sb(leg2.sign_b);
      junction.emplace_back(scale_mat(flip.samples[i].mats[0], sa, true),
                            scale_mat(flip.samples[i].mats[1], sb, true));
    }
  }
  for (auto it = leg2.samples.rbegin() + 1; it != leg2.samples.rend(); ++it)
    junction.push_back(*it);

  // Back to the original frame; the first junction sample duplicates the
  // tracked arrival and is dropped, the last is snapped to `end` exactly.
  const int jn = static_cast<int>(junction.size());
  for (int i = 1; i < jn; ++i) {
    Mat2c Aj = junction[i].first.conjugated_by(diag.P).as_sl2(1e-6);
    Mat2c Bj = junction[i].second.conjugated_by(diag.P).as_sl2(1e-6);
    if (i == jn - 1) {
      if (to_double_real<Complex>(max_norm_distance(Aj, end.A)) > 1e-6 ||
          to_double_real<Complex>(max_norm_distance(Bj, end.B)) > 1e-6)
        throw NumericError("junction endpoint mismatch");
      Aj = end.A;
      Bj = end.B;
    }
    double t = tau + (1.0 - tau) * double(i) / (jn - 1);
    out.samples.push_back(
        {t, Aj, Bj, M1,
         to_double_real<Complex>(
             max_norm_distance(mat_commutator(Aj, Bj), M1))});
  }
  out.samples.back().t = 1.0;

  double bound = 0;
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    bound = std::max(
        bound,
        std::max(to_double_real<Complex>(max_norm_distance(
                     out.samples[i].A, out.samples[i - 1].A)),
                 to_double_real<Complex>(max_norm_distance(
                     out.samples[i].B, out.samples[i - 1].B))));
  }
  out.step_bound = bound;
  return out;
}

}  // namespace repvar
