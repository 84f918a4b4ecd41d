#include "repvar/polypath.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "repvar/errors.hpp"

namespace repvar {

MultiPoly MultiPoly::constant(int nvars, Complex c) {
  MultiPoly p(nvars);
  p.add_term(c, std::vector<int>(nvars, 0));
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars)
    throw DomainError("MultiPoly::variable index out of range");
  MultiPoly p(nvars);
  std::vector<int> e(nvars, 0);
  e[index] = 1;
  p.add_term(Complex(1, 0), std::move(e));
  return p;
}

MultiPoly& MultiPoly::add_term(Complex coeff, std::vector<int> exponents) {
  if (static_cast<int>(exponents.size()) != nvars_)
    throw DomainError("MultiPoly term with wrong variable count");
  for (auto& t : terms_) {
    if (t.exponents == exponents) {
      t.coeff += coeff;
      return *this;
    }
  }
  terms_.push_back({coeff, std::move(exponents)});
  return *this;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int td = 0;
    for (int e : t.exponents) td += e;
    d = std::max(d, td);
  }
  return d;
}

Complex MultiPoly::eval(const std::vector<Complex>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw DomainError("MultiPoly::eval dimension mismatch");
  Complex sum = 0;
  for (const auto& t : terms_) {
    Complex v = t.coeff;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < t.exponents[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw DomainError("MultiPoly var count mismatch");
  MultiPoly out(nvars_);
  for (const auto& s : terms_)
    for (const auto& t : o.terms_) {
      std::vector<int> e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = s.exponents[i] + t.exponents[i];
      out.add_term(s.coeff * t.coeff, std::move(e));
    }
  return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly out = *this;
  for (const auto& t : o.terms_) out.add_term(t.coeff, t.exponents);
  return out;
}

namespace {

// Product of univariate polynomials (ascending coefficients).
std::vector<Complex> poly_mul(const std::vector<Complex>& p,
                              const std::vector<Complex>& q) {
  std::vector<Complex> r(p.size() + q.size() - 1, Complex(0, 0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

}  // namespace

std::vector<Complex> restrict_to_line(const MultiPoly& p,
                                      const std::vector<Complex>& x,
                                      const std::vector<Complex>& y) {
  const int n = p.nvars();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw DomainError("restrict_to_line dimension mismatch");
  std::vector<Complex> acc(1, Complex(0, 0));
  for (const auto& t : p.terms()) {
    std::vector<Complex> term = {t.coeff};
    for (int i = 0; i < n; ++i) {
      std::vector<Complex> lin = {x[i], y[i] - x[i]};  // x_i + tau d_i
      for (int k = 0; k < t.exponents[i]; ++k) term = poly_mul(term, lin);
    }
    if (acc.size() < term.size()) acc.resize(term.size(), Complex(0, 0));
    for (std::size_t i = 0; i < term.size(); ++i) acc[i] += term[i];
  }
  return acc;
}

std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs) {
  double scale = 0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0) return {};
  while (coeffs.size() > 1 && std::abs(coeffs.back()) < scale * 1e-13)
    coeffs.pop_back();
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) {
    if (i + 1 < deg) companion(i + 1, i) = 1;
    companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

namespace {

// Waypoints in the tau plane: 0 -> 1 along the real axis with semicircular
// detours around restricted-polynomial roots close to the segment.  The
// detour passes on the side opposite the root's imaginary part.
struct TauPiece {
  // parametrized sub-path: either a straight segment or an arc
  Complex from, to;   // straight segment ends (used when !arc)
  bool arc = false;
  double center = 0;  // arc data
  double radius = 0;
  int side = +1;      // +1: upper half plane
  double length() const {
    if (arc) return M_PI * radius;
    return std::abs(to - from);
  }
  Complex at(double u) const {  // u in [0,1]
    if (!arc) return from + u * (to - from);
    // starts at center - radius, ends at center + radius
    double phi = side > 0 ? M_PI * (1 - u) : M_PI * (1 + u);
    return Complex(center, 0) + radius * Complex(std::cos(phi), std::sin(phi));
  }
};

std::vector<TauPiece> plan_tau_path(const std::vector<Complex>& roots,
                                    double cap) {
  struct Detour {
    double center, radius;
    int side;
  };
  std::vector<Detour> detours;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double nearest = cap * 2;
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (j != i) nearest = std::min(nearest, std::abs(roots[i] - roots[j]));
    double radius = std::min(cap, nearest / 2);
    if (radius <= 0) radius = cap * 1e-3;
    double re = roots[i].real(), im = roots[i].imag();
    if (std::abs(im) >= radius) continue;  // already clear
    if (re < 0 || re > 1) continue;        // off the segment
    detours.push_back({re, radius, im > 0 ? -1 : +1});
  }
  std::sort(detours.begin(), detours.end(),
            [](const Detour& a, const Detour& b) { return a.center < b.center; });
  std::vector<TauPiece> pieces;
  double cursor = 0;
  for (const auto& d : detours) {
    double left = d.center - d.radius, right = d.center + d.radius;
    if (right <= 0 || left >= 1) continue;
    if (left > cursor) {
      TauPiece seg;
      seg.from = Complex(cursor, 0);
      seg.to = Complex(left, 0);
      pieces.push_back(seg);
    }
    TauPiece arc;
    arc.arc = true;
    arc.center = d.center;
    arc.radius = d.radius;
    arc.side = d.side;
    pieces.push_back(arc);
    cursor = right;
  }
  if (cursor != 1.0 || pieces.empty()) {
    TauPiece seg;
    seg.from = Complex(cursor, 0);
    seg.to = Complex(1, 0);
    pieces.push_back(seg);
  }
  return pieces;
}

}  // namespace

PolyPath path_avoiding_zeros(const MultiPoly& p, std::vector<Complex> x,
                             std::vector<Complex> y, int n_samples,
                             double detour_cap) {
  if (n_samples < 2) throw DomainError("path needs at least 2 samples");
  const double px = std::abs(p.eval(x)), py = std::abs(p.eval(y));
  if (px == 0 || py == 0)
    throw DomainError("path_avoiding_zeros: polynomial vanishes at endpoint");

  auto q = restrict_to_line(p, x, y);
  double qmax = 0;
  for (const auto& c : q) qmax = std::max(qmax, std::abs(c));
  if (qmax < std::max(px, py) * 1e-13) {
    // p vanishes identically on the line; route through a point off it.
    static const double bumps[] = {0.5, 0.25, 1.0, 2.0};
    for (double bump : bumps) {
      for (int coord = 0; coord < p.nvars(); ++coord) {
        std::vector<Complex> w(x.size());
        double scale = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
          scale = std::max({scale, std::abs(x[i]), std::abs(y[i])});
        if (scale == 0) scale = 1;
        for (std::size_t i = 0; i < x.size(); ++i) w[i] = (x[i] + y[i]) / 2.0;
        w[coord] += Complex(0.37, 0.61) * bump * scale;
        if (std::abs(p.eval(w)) == 0) continue;
        auto qa = restrict_to_line(p, x, w);
        auto qb = restrict_to_line(p, w, y);
        double qa_max = 0, qb_max = 0;
        for (const auto& c : qa) qa_max = std::max(qa_max, std::abs(c));
        for (const auto& c : qb) qb_max = std::max(qb_max, std::abs(c));
        if (qa_max < 1e-300 || qb_max < 1e-300) continue;
        int half = std::max(2, n_samples / 2);
        PolyPath first = path_avoiding_zeros(p, x, w, half, detour_cap);
        PolyPath second = path_avoiding_zeros(p, w, y, half, detour_cap);
        PolyPath out;
        for (std::size_t i = 0; i < first.t.size(); ++i) {
          out.t.push_back(first.t[i] / 2);
          out.points.push_back(first.points[i]);
        }
        for (std::size_t i = 1; i < second.t.size(); ++i) {
          out.t.push_back(0.5 + second.t[i] / 2);
          out.points.push_back(second.points[i]);
        }
        return out;
      }
    }
    throw NumericError("path_avoiding_zeros: could not leave the zero locus");
  }

  auto roots = polynomial_roots(q);
  auto pieces = plan_tau_path(roots, detour_cap);

  double total = 0;
  for (const auto& piece : pieces) total += piece.length();
  if (total == 0) total = 1;

  PolyPath out;
  // Distribute samples along the pieces proportionally to length.
  std::vector<Complex> taus;
  taus.push_back(Complex(0, 0));
  double done = 0;
  for (const auto& piece : pieces) {
    int count = std::max(
        1, static_cast<int>(std::lround(n_samples * piece.length() / total)));
    for (int k = 1; k <= count; ++k) taus.push_back(piece.at(double(k) / count));
    done += piece.length();
  }
  (void)done;
  taus.back() = Complex(1, 0);

  for (std::size_t i = 0; i < taus.size(); ++i) {
    std::vector<Complex> pt(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
      pt[j] = x[j] + taus[i] * (y[j] - x[j]);
    if (i == 0) pt = x;
    if (i + 1 == taus.size()) pt = y;
    if (std::abs(p.eval(pt)) == 0)
      throw NumericError("path_avoiding_zeros: sample hit the zero set");
    out.t.push_back(double(i) / double(taus.size() - 1));
    out.points.push_back(std::move(pt));
  }
  return out;
}

}  // namespace repvar
