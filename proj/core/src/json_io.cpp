#include "repvar/json_io.hpp"

namespace repvar {

Backend backend_from_string(const std::string& s) {
  if (s == "exact") return Backend::exact;
  if (s == "float" || s == "floating") return Backend::floating;
  throw DomainError("unknown backend: " + s);
}

std::string backend_to_string(Backend b) {
  return b == Backend::exact ? "exact" : "float";
}

json scalar_to_json(const GaussianRational& z) {
  return json::array(
      {rational_to_string(z.re()), rational_to_string(z.im())});
}

json scalar_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

GaussianRational scalar_q_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw DomainError("complex JSON must be [re, im]");
  auto part = [](const json& v) -> mpq_class {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    throw DomainError(
        "exact backend needs rational strings (or integers) in JSON");
  };
  return GaussianRational(part(j[0]), part(j[1]));
}

Complex scalar_c_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw DomainError("complex JSON must be [re, im]");
  auto part = [](const json& v) -> double {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      mpq_class q = parse_rational(v.get<std::string>());
      return q.get_d();
    }
    throw DomainError("bad complex component in JSON");
  };
  return Complex(part(j[0]), part(j[1]));
}

json word_to_json(const FreeWord& w) {
  json out = json::array();
  for (const auto& [gen, exp] : w.syllables())
    out.push_back(json::array({gen, exp}));
  return out;
}

FreeWord word_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("word JSON must be an array");
  std::vector<FreeWord::Syllable> syl;
  for (const auto& s : j) {
    if (!s.is_array() || s.size() != 2)
      throw DomainError("word syllable must be [generator, exponent]");
    syl.push_back({s[0].get<int>(), s[1].get<std::int64_t>()});
  }
  return FreeWord(std::move(syl));
}

json presentation_to_json(const Presentation& p) {
  if (p.is_surface()) return json{{"kind", "surface"}, {"genus", p.genus()}};
  return json{{"kind", "free"}, {"rank", p.rank()}};
}

Presentation presentation_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "surface") return Presentation::surface(j.at("genus").get<int>());
  if (kind == "free") return Presentation::free_group(j.at("rank").get<int>());
  throw DomainError("presentation kind must be 'free' or 'surface'");
}

json lifted_path_to_json(const LiftedPath& path) {
  json samples = json::array();
  for (const auto& s : path.samples)
    samples.push_back(json{{"t", s.t},
                           {"A", mat2_to_json(s.A)},
                           {"B", mat2_to_json(s.B)},
                           {"target", mat2_to_json(s.target)},
                           {"residual", s.residual}});
  return json{{"samples", samples},
              {"step_bound", path.step_bound},
              {"max_residual", path.max_residual()}};
}

json certificate_to_json(const Certificate& cert) {
  auto wrec = [](const WConditionRecord& r) {
    return json{{"name", r.name},
                {"value", scalar_to_json(r.value)},
                {"satisfied", r.satisfied},
                {"exactness", "exact"}};
  };
  json scc = json::array();
  for (const auto& c : cert.scc_checks)
    scc.push_back(json{{"word", word_to_json(c.word)},
                       {"trace", scalar_to_json(c.trace)},
                       {"killed", c.killed}});
  json samples = json::array();
  for (const auto& s : cert.real_trace_samples)
    samples.push_back(json{{"word", word_to_json(s.word)},
                           {"trace", scalar_to_json(s.trace)},
                           {"real", s.real},
                           {"image_identity", s.image_identity},
                           {"image_parabolic", s.image_parabolic},
                           {"disallowed", s.disallowed}});
  return json{
      {"pass", cert.pass},
      {"w_conditions",
       json{{"w1", wrec(cert.w.w1)},
            {"w2", wrec(cert.w.w2)},
            {"w3", wrec(cert.w.w3)},
            {"w4", wrec(cert.w.w4)},
            {"w5", wrec(cert.w.w5)}}},
      {"relator_residual", cert.relator_residual.get_str()},
      {"kernel_witness_word", word_to_json(cert.kernel_witness_word)},
      {"witness_residual", cert.witness_residual.get_str()},
      {"scc_checks", scc},
      {"real_trace_samples", samples},
      {"seed", cert.seed},
      {"sample_count", cert.sample_count},
      {"max_word_len", cert.max_word_len},
      {"failures", cert.failures}};
}

json sgood_coords_to_json(const SGoodCoords<GaussianRational>& c) {
  json tail = json::array();
  for (const auto& m : c.tail) tail.push_back(mat2_to_json(m));
  return json{{"a", scalar_to_json(c.a)},
              {"b", scalar_to_json(c.b)},
              {"c", scalar_to_json(c.c)},
              {"tail", tail}};
}

json sgood_coords_to_json(const SGoodCoords<Complex>& c) {
  json tail = json::array();
  for (const auto& m : c.tail) tail.push_back(mat2_to_json(m));
  return json{{"a", scalar_to_json(c.a)},
              {"b", scalar_to_json(c.b)},
              {"c", scalar_to_json(c.c)},
              {"tail", tail}};
}

}  // namespace repvar
