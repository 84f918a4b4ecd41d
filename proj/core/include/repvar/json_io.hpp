#pragma once

#include <nlohmann/json.hpp>

#include "repvar/deform.hpp"
#include "repvar/lift.hpp"
#include "repvar/surface_builder.hpp"

namespace repvar {

using json = nlohmann::ordered_json;

enum class Backend { exact, floating };

Backend backend_from_string(const std::string& s);
std::string backend_to_string(Backend b);

// Scalars: exact values encode each part as a rational string "p/q" (bit
// exact round trip), float values as plain numbers.  Complex numbers are
// two-element arrays [re, im].
json scalar_to_json(const GaussianRational& z);
json scalar_to_json(const Complex& z);
GaussianRational scalar_q_from_json(const json& j);
Complex scalar_c_from_json(const json& j);

template <class S>
S scalar_from_json(const json& j);
template <>
inline GaussianRational scalar_from_json<GaussianRational>(const json& j) {
  return scalar_q_from_json(j);
}
template <>
inline Complex scalar_from_json<Complex>(const json& j) {
  return scalar_c_from_json(j);
}

// Mat2: row-major 2x2 array of complex encodings.
template <class S>
json mat2_to_json(const Mat2<S>& m) {
  return json::array({json::array({scalar_to_json(m.a()), scalar_to_json(m.b())}),
                      json::array({scalar_to_json(m.c()), scalar_to_json(m.d())})});
}
template <class S>
Mat2<S> mat2_from_json(const json& j, bool sl2_flag = true,
                       double tol = kDetTolerance);

json word_to_json(const FreeWord& w);
FreeWord word_from_json(const json& j);

json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

template <class S>
json representation_to_json(const Representation<S>& rho);
template <class S>
Representation<S> representation_from_json(const json& j, double tol = 1e-7);

template <class S>
json character_to_json(const Character<S>& x);
template <class S>
Character<S> character_from_json(const json& j);

template <class S>
json fiber_point_to_json(const FiberPoint<S>& fp);
template <class S>
FiberPoint<S> fiber_point_from_json(const json& j, double tol = 1e-8);

template <class S>
json matrix_path_to_json(const MatrixPath<S>& path);
template <class S>
MatrixPath<S> matrix_path_from_json(const json& j, double tol = 1e-8);

json lifted_path_to_json(const LiftedPath& path);

json certificate_to_json(const Certificate& cert);

json sgood_coords_to_json(const SGoodCoords<GaussianRational>& c);
json sgood_coords_to_json(const SGoodCoords<Complex>& c);

// ---------------------------------------------------------------------------

template <class S>
Mat2<S> mat2_from_json(const json& j, bool sl2_flag, double tol) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    throw DomainError("matrix JSON must be a 2x2 array");
  S a = scalar_from_json<S>(j[0][0]);
  S b = scalar_from_json<S>(j[0][1]);
  S c = scalar_from_json<S>(j[1][0]);
  S d = scalar_from_json<S>(j[1][1]);
  if (sl2_flag) return Mat2<S>::sl2(a, b, c, d, tol);
  return Mat2<S>(a, b, c, d, false);
}

template <class S>
json representation_to_json(const Representation<S>& rho) {
  json images = json::array();
  for (const auto& m : rho.images()) images.push_back(mat2_to_json(m));
  return json{{"presentation", presentation_to_json(rho.presentation())},
              {"images", images}};
}

template <class S>
Representation<S> representation_from_json(const json& j, double tol) {
  Presentation pres = presentation_from_json(j.at("presentation"));
  std::vector<Mat2<S>> images;
  for (const auto& m : j.at("images"))
    images.push_back(mat2_from_json<S>(m, true, tol));
  return Representation<S>(pres, std::move(images), tol);
}

template <class S>
json character_to_json(const Character<S>& x) {
  json words = json::array(), traces = json::array();
  for (const auto& w : x.words) words.push_back(word_to_json(w));
  for (const auto& t : x.traces) traces.push_back(scalar_to_json(t));
  return json{{"words", words}, {"traces", traces}};
}

template <class S>
Character<S> character_from_json(const json& j) {
  Character<S> x;
  for (const auto& w : j.at("words")) x.words.push_back(word_from_json(w));
  for (const auto& t : j.at("traces"))
    x.traces.push_back(scalar_from_json<S>(t));
  if (x.words.size() != x.traces.size())
    throw DomainError("character words/traces length mismatch");
  return x;
}

template <class S>
json fiber_point_to_json(const FiberPoint<S>& fp) {
  return json{{"A", mat2_to_json(fp.A)},
              {"B", mat2_to_json(fp.B)},
              {"target", mat2_to_json(fp.target)},
              {"residual", to_double_real<S>(fp.residual)}};
}

template <class S>
FiberPoint<S> fiber_point_from_json(const json& j, double tol) {
  return FiberPoint<S>(mat2_from_json<S>(j.at("A"), true, tol),
                       mat2_from_json<S>(j.at("B"), true, tol),
                       mat2_from_json<S>(j.at("target"), true, tol), tol);
}

template <class S>
json matrix_path_to_json(const MatrixPath<S>& path) {
  json samples = json::array();
  for (const auto& s : path.samples) {
    json mats = json::array();
    for (const auto& m : s.mats) mats.push_back(mat2_to_json(m));
    samples.push_back(json{{"t", s.t}, {"matrices", mats}});
  }
  return json{{"samples", samples}, {"step_bound", path.step_bound}};
}

template <class S>
MatrixPath<S> matrix_path_from_json(const json& j, double tol) {
  MatrixPath<S> path;
  for (const auto& s : j.at("samples")) {
    typename MatrixPath<S>::Sample sample;
    sample.t = s.at("t").get<double>();
    for (const auto& m : s.at("matrices"))
      sample.mats.push_back(mat2_from_json<S>(m, true, tol));
    path.samples.push_back(std::move(sample));
  }
  path.step_bound = j.value("step_bound", 0.0);
  path.validate();
  return path;
}

}  // namespace repvar
