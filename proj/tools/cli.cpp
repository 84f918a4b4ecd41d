#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "repvar/deform.hpp"
#include "repvar/lift.hpp"
#include "repvar/schema.hpp"
#include "repvar/suite.hpp"
#include "repvar/surface_builder.hpp"

namespace repvar {

namespace {

struct Config {
  Backend backend = Backend::exact;
  double det_tolerance = 1e-9;
  double fiber_tolerance = 1e-9;
  double relator_tolerance = 1e-9;
  double fixpoint_tolerance = 1e-9;
  double smallness_bound = 0.1;
  double detour_radius = 0.1;
  int newton_max_iters = 25;
  std::uint64_t seed = 0;
};

Config load_config_env() {
  Config cfg;
  const char* path = std::getenv("REPVAR_CONFIG");
  if (!path) return cfg;
  std::ifstream f(path);
  if (!f) throw DomainError(std::string("cannot read REPVAR_CONFIG: ") + path);
  json j = json::parse(f);
  validate_against_schema(j, "config");
  if (j.contains("backend"))
    cfg.backend = backend_from_string(j["backend"].get<std::string>());
  cfg.det_tolerance = j.value("det_tolerance", cfg.det_tolerance);
  cfg.fiber_tolerance = j.value("fiber_tolerance", cfg.fiber_tolerance);
  cfg.relator_tolerance = j.value("relator_tolerance", cfg.relator_tolerance);
  cfg.fixpoint_tolerance =
      j.value("fixpoint_tolerance", cfg.fixpoint_tolerance);
  cfg.smallness_bound = j.value("smallness_bound", cfg.smallness_bound);
  cfg.detour_radius = j.value("detour_radius", cfg.detour_radius);
  cfg.newton_max_iters = j.value("newton_max_iters", cfg.newton_max_iters);
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

json read_json_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return json::parse(in);
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read " + path);
  return json::parse(f);
}

void write_json_output(const json& j, const std::string& path,
                       std::ostream& out) {
  if (path.empty() || path == "-") {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << j.dump(2) << "\n";
}

// Parses "re", "re+imi" style complex literals into the requested backend.
template <class S>
S parse_complex_flag(const std::string& text);

template <>
GaussianRational parse_complex_flag<GaussianRational>(const std::string& t) {
  // Accept "a", "a+bi", "a-bi" with rational a, b.
  auto pos = t.find_last_of("+-");
  if (pos != std::string::npos && pos > 0 && t.back() == 'i') {
    std::string re = t.substr(0, pos);
    std::string im = t.substr(pos, t.size() - pos - 1);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return GaussianRational(parse_rational(re), parse_rational(im));
  }
  if (!t.empty() && t.back() == 'i') {
    std::string im = t.substr(0, t.size() - 1);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return GaussianRational(mpq_class(0), parse_rational(im));
  }
  return GaussianRational(parse_rational(t));
}

template <>
Complex parse_complex_flag<Complex>(const std::string& t) {
  GaussianRational q = parse_complex_flag<GaussianRational>(t);
  return Complex(q.re_double(), q.im_double());
}

int run_verify_identities(const Config&, std::ostream& out) {
  SuiteReport report = run_suite("trace_lab", false);
  for (const auto& c : report.checks)
    out << fmt::format("{:5}  {:40}  {}  {}\n", c.id, c.name,
                       c.pass ? "PASS" : "FAIL", c.details);
  return report.all_pass() ? 0 : 3;
}

int run_detect_irreducible(const Config& cfg, const std::string& input,
                           const std::string& output, std::istream& in,
                           std::ostream& out) {
  json j = read_json_input(input, in);
  validate_against_schema(j, "representation");
  json result;
  if (cfg.backend == Backend::exact) {
    auto rho = representation_from_json<GaussianRational>(j);
    auto w = find_irreducible_pair(rho.images(), cfg.fixpoint_tolerance);
    result = json{{"c_word", word_to_json(w.c_word)},
                  {"d_word", word_to_json(w.d_word)},
                  {"d_form", w.d_form == WitnessForm::aba ? "aba" : "direct"},
                  {"trace", scalar_to_json(w.trace_value)},
                  {"c", w.c_word.to_string(
                            rho.presentation().generator_names())},
                  {"d", w.d_word.to_string(
                            rho.presentation().generator_names())}};
  } else {
    auto rho = representation_from_json<Complex>(j);
    auto w = find_irreducible_pair(rho.images(), cfg.fixpoint_tolerance);
    result = json{{"c_word", word_to_json(w.c_word)},
                  {"d_word", word_to_json(w.d_word)},
                  {"d_form", w.d_form == WitnessForm::aba ? "aba" : "direct"},
                  {"trace", scalar_to_json(w.trace_value)},
                  {"c", w.c_word.to_string(
                            rho.presentation().generator_names())},
                  {"d", w.d_word.to_string(
                            rho.presentation().generator_names())}};
  }
  write_json_output(result, output, out);
  return 0;
}

int run_lift_character(const Config& cfg, const std::string& input,
                       const std::string& output, int sheet, std::istream& in,
                       std::ostream& out) {
  json j = read_json_input(input, in);
  validate_against_schema(j, "character");
  json result;
  if (cfg.backend == Backend::exact) {
    auto x = character_from_json<GaussianRational>(j);
    auto coords = lift_character(x, sheet);
    result = json{{"coords", sgood_coords_to_json(coords)},
                  {"representation",
                   representation_to_json(coords.to_representation())}};
  } else {
    auto x = character_from_json<Complex>(j);
    auto coords = lift_character(x, sheet);
    result = json{{"coords", sgood_coords_to_json(coords)},
                  {"representation",
                   representation_to_json(coords.to_representation())}};
  }
  write_json_output(result, output, out);
  return 0;
}

template <class S>
json solve_fiber_typed(const Config& cfg, const std::string& m_text,
                       const std::string& sqrt_m_text,
                       const std::string& family,
                       const std::vector<std::string>& params,
                       const std::string& target_path, std::istream& in) {
  if (!target_path.empty()) {
    json tj = read_json_input(target_path, in);
    Mat2<S> M = mat2_from_json<S>(tj.at("matrix"), true, cfg.det_tolerance);
    auto fp = solve_commutator(M, cfg.fiber_tolerance);
    return fiber_point_to_json(fp);
  }
  S m = parse_complex_flag<S>(m_text);
  if (family == "base") {
    S sqrt_m;
    if (!sqrt_m_text.empty()) {
      sqrt_m = parse_complex_flag<S>(sqrt_m_text);
    } else if constexpr (is_exact_v<S>) {
      auto r = gaussian_sqrt(m);
      if (!r)
        throw DomainError(
            "m has no exact square root; pass --sqrt-m or use --backend "
            "float");
      sqrt_m = *r;
    } else {
      sqrt_m = std::sqrt(m);
    }
    return fiber_point_to_json(
        fiber_base_point(m, sqrt_m, cfg.fiber_tolerance));
  }
  if (params.size() != 5)
    throw DomainError("families need --params a b c s t (five values)");
  S a = parse_complex_flag<S>(params[0]);
  S b = parse_complex_flag<S>(params[1]);
  S c = parse_complex_flag<S>(params[2]);
  S s = parse_complex_flag<S>(params[3]);
  S t = parse_complex_flag<S>(params[4]);
  if (family == "c" || family == "ab1")
    return fiber_point_to_json(
        fiber_family_c(m, a, b, c, s, t, cfg.fiber_tolerance));
  if (family == "a" || family == "ab2")
    return fiber_point_to_json(
        fiber_family_a(m, a, b, c, s, t, cfg.fiber_tolerance));
  throw DomainError("unknown family: " + family);
}

int run_build_rep(const Config&, int genus, std::uint64_t seed,
                  const std::string& output, std::ostream& out) {
  RepresentationQ rho = build_representation(genus, seed);
  json j = representation_to_json(rho);
  j["seed"] = seed;
  write_json_output(j, output, out);
  return 0;
}

int run_certify(const Config&, const std::string& input,
                const std::string& output, int catalog_depth, int samples,
                int max_len, std::uint64_t seed, std::istream& in,
                std::ostream& out) {
  json j = read_json_input(input, in);
  validate_against_schema(j, "representation");
  auto rho = representation_from_json<GaussianRational>(j);
  auto catalog =
      scc_default_catalog(rho.presentation().genus(), catalog_depth);
  Certificate cert = certify(rho, catalog, samples, max_len, seed);
  write_json_output(certificate_to_json(cert), output, out);
  return cert.pass ? 0 : 1;
}

int run_dims(const Config&, int genus, const std::string& query, int g1,
             std::ostream& out) {
  DimensionQuery q;
  if (query == "whole")
    q = DimensionQuery::whole;
  else if (query == "kill_nonseparating")
    q = DimensionQuery::kill_nonseparating;
  else if (query == "kill_separating")
    q = DimensionQuery::kill_separating;
  else if (query == "Z_locus" || query == "z_locus")
    q = DimensionQuery::z_locus;
  else
    throw CLI::ValidationError("--query", "unknown query " + query);
  out << dimension_calculator(genus, q, g1) << "\n";
  return 0;
}

int run_suite_cmd(const Config&, const std::string& group, bool acceptance,
                  const std::string& output, std::ostream& out) {
  SuiteReport report = run_suite(group, acceptance);
  json j = report.to_json();
  validate_against_schema(j, "suite_report");
  write_json_output(j, output, out);
  return report.all_pass() ? 0 : 3;
}

int run_lift_path(const Config& cfg, const std::string& path_file,
                  const std::string& start_file, const std::string& end_file,
                  int steps, const std::string& output, std::istream& in,
                  std::ostream& out) {
  json pj = read_json_input(path_file, in);
  validate_against_schema(pj, "matrix_path");
  MatrixPathC targets = matrix_path_from_json<Complex>(pj);
  json sj = read_json_input(start_file, in);
  validate_against_schema(sj, "fiber_point");
  FiberPointC start =
      fiber_point_from_json<Complex>(sj, cfg.fiber_tolerance * 10);
  json ej = read_json_input(end_file, in);
  validate_against_schema(ej, "fiber_point");
  FiberPointC end =
      fiber_point_from_json<Complex>(ej, cfg.fiber_tolerance * 10);
  LiftOptions opts;
  opts.steps = steps;
  opts.max_newton_iters = cfg.newton_max_iters;
  opts.fiber_tol = cfg.fiber_tolerance;
  LiftedPath lifted = lift_path_fixed_endpoints(targets, start, end, opts);
  write_json_output(lifted_path_to_json(lifted), output, out);
  return 0;
}

int run_deform(const Config& cfg, const std::string& rep_file,
               const std::string& boundary_file,
               const std::vector<int>& fixed, double max_norm,
               const std::string& output, std::istream& in,
               std::ostream& out) {
  json rj = read_json_input(rep_file, in);
  validate_against_schema(rj, "representation");
  Presentation pres = presentation_from_json(rj.at("presentation"));
  std::vector<Mat2c> images;
  for (const auto& m : rj.at("images"))
    images.push_back(mat2_from_json<Complex>(m, true, cfg.det_tolerance));
  json bj = read_json_input(boundary_file, in);
  validate_against_schema(bj, "boundary_target");
  BoundaryTarget<Complex> target(
      mat2_from_json<Complex>(bj.at("matrix"), true, cfg.det_tolerance));
  RepresentationC outrep =
      extend_boundary_deformation(pres, images, fixed, target, max_norm);
  write_json_output(representation_to_json(outrep), output, out);
  return 0;
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{
      "repvar: SL(2,C) representation and character variety toolkit"};
  app.require_subcommand(1);

  Config cfg;
  try {
    cfg = load_config_env();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::string backend_flag;
  app.add_option("--backend", backend_flag,
                 "scalar backend: exact | float (default exact)");

  std::string input, output;

  auto* verify = app.add_subcommand(
      "verify-identities", "run the trace-identity invariant suite");

  auto* detect = app.add_subcommand("detect-irreducible",
                                    "find an irreducibility witness");
  detect->add_option("--input", input, "representation JSON (default stdin)");
  detect->add_option("--output,-o", output, "output file (default stdout)");

  int sheet = 1;
  auto* liftc = app.add_subcommand("lift-character",
                                   "lift a character to sgood coordinates");
  liftc->add_option("--input", input, "character JSON (default stdin)");
  liftc->add_option("--output,-o", output, "output file (default stdout)");
  liftc->add_option("--sheet", sheet, "covering sheet: 1 or 2")
      ->check(CLI::Range(1, 2));

  std::string m_text, sqrt_m_text, family = "base", target_file;
  std::vector<std::string> params;
  auto* fiber = app.add_subcommand("solve-fiber",
                                   "produce a point of a commutator fiber");
  fiber->add_option("--m", m_text, "diagonal parameter m (complex literal)");
  fiber->add_option("--sqrt-m", sqrt_m_text, "square-root branch of m");
  fiber->add_option("--family", family,
                    "base | c (ab1) | a (ab2); default base");
  fiber->add_option("--params", params, "family parameters a b c s t");
  fiber->add_option("--target", target_file,
                    "JSON {matrix: ...}: solve [A,B] = M exactly");
  fiber->add_option("--output,-o", output, "output file (default stdout)");

  std::string path_file, start_file, end_file;
  int steps = 256;
  auto* liftp = app.add_subcommand("lift-path",
                                   "lift a target path with fixed endpoints");
  liftp->add_option("--path", path_file, "target MatrixPath JSON")->required();
  liftp->add_option("--start", start_file, "start FiberPoint JSON")
      ->required();
  liftp->add_option("--end", end_file, "end FiberPoint JSON")->required();
  liftp->add_option("--steps", steps, "tracking samples (default 256)");
  liftp->add_option("--output,-o", output, "output file (default stdout)");

  std::string rep_file, boundary_file;
  std::vector<int> fixed_gens;
  double max_norm = 0.01;
  auto* deform = app.add_subcommand(
      "deform", "extend a boundary deformation over the complement");
  deform->add_option("--rep", rep_file, "representation JSON")->required();
  deform->add_option("--boundary", boundary_file, "boundary target JSON")
      ->required();
  deform->add_option("--fixed", fixed_gens,
                     "generator indices held fixed (whole leading handles)");
  deform->add_option("--max-norm", max_norm,
                     "boundary perturbation bound (default 0.01)");
  deform->add_option("--output,-o", output, "output file (default stdout)");

  int genus = 4;
  std::uint64_t seed = cfg.seed;
  auto* build = app.add_subcommand("build-rep",
                                   "construct a certified-candidate "
                                   "representation with tr rho(C) = 2");
  build->add_option("--genus", genus, "genus (>= 4)")->required();
  build->add_option("--seed", seed, "random seed");
  build->add_option("--output,-o", output, "output file (default stdout)");

  int catalog_depth = 2, samples = 500, max_len = 8;
  auto* certify_cmd =
      app.add_subcommand("certify", "evaluate the W conditions and checks");
  certify_cmd->add_option("--rep", input, "representation JSON (default stdin)");
  certify_cmd->add_option("--catalog-depth", catalog_depth,
                          "mapping-class move depth (default 2)");
  certify_cmd->add_option("--samples", samples,
                          "real-trace samples (default 500)");
  certify_cmd->add_option("--max-len", max_len,
                          "sampled word length bound (default 8)");
  certify_cmd->add_option("--seed", seed, "sampling seed");
  certify_cmd->add_option("--output,-o", output,
                          "output file (default stdout)");

  std::string query = "whole";
  int g1 = 1;
  auto* dims = app.add_subcommand("dims", "dimension table queries");
  dims->add_option("--genus", genus, "genus")->required();
  dims->add_option("--query", query,
                   "whole | kill_nonseparating | kill_separating | Z_locus");
  dims->add_option("--g1", g1, "separating piece genus (kill_separating)");

  std::string group;
  bool acceptance_only = false;
  auto* suite = app.add_subcommand("suite", "run the full verification suite");
  suite->add_option("--group", group, "restrict to one module group");
  suite->add_flag("--acceptance-only", acceptance_only,
                  "run only the acceptance criteria");
  suite->add_option("--output,-o", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  if (!backend_flag.empty()) {
    try {
      cfg.backend = backend_from_string(backend_flag);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }

  try {
    if (verify->parsed()) return run_verify_identities(cfg, out);
    if (detect->parsed())
      return run_detect_irreducible(cfg, input, output, in, out);
    if (liftc->parsed())
      return run_lift_character(cfg, input, output, sheet, in, out);
    if (fiber->parsed()) {
      json result =
          cfg.backend == Backend::exact
              ? solve_fiber_typed<GaussianRational>(cfg, m_text, sqrt_m_text,
                                                    family, params,
                                                    target_file, in)
              : solve_fiber_typed<Complex>(cfg, m_text, sqrt_m_text, family,
                                           params, target_file, in);
      write_json_output(result, output, out);
      return 0;
    }
    if (liftp->parsed())
      return run_lift_path(cfg, path_file, start_file, end_file, steps,
                           output, in, out);
    if (deform->parsed())
      return run_deform(cfg, rep_file, boundary_file, fixed_gens, max_norm,
                        output, in, out);
    if (build->parsed()) return run_build_rep(cfg, genus, seed, output, out);
    if (certify_cmd->parsed())
      return run_certify(cfg, input, output, catalog_depth, samples, max_len,
                         seed, in, out);
    if (dims->parsed()) return run_dims(cfg, genus, query, g1, out);
    if (suite->parsed())
      return run_suite_cmd(cfg, group, acceptance_only, output, out);
    err << "error: no subcommand\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    err << "error: bad JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace repvar
