#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "repvar/schema.hpp"
#include "repvar/surface_builder.hpp"
#include "support.hpp"

using namespace repvar;
using test::gq;

namespace {

int run_cli(const std::vector<std::string>& args, const std::string& input,
            std::string* out_text, std::string* err_text = nullptr) {
  std::vector<const char*> argv = {"repvar"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli_run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("scalar and matrix JSON round trips") {
  GaussianRational z = gq(-7, 3, 22, 5);
  json j = scalar_to_json(z);
  CHECK(scalar_q_from_json(j) == z);
  CHECK(j[0].get<std::string>() == "-7/3");

  Complex w(0.25, -1.5);
  CHECK(scalar_c_from_json(scalar_to_json(w)) == w);

  std::mt19937_64 rng(73);
  Mat2q m = test::rand_sl2q(rng);
  CHECK(mat2_from_json<GaussianRational>(mat2_to_json(m)) == m);

  FreeWord word = word_commutator(FreeWord::generator(0),
                                  FreeWord::generator(3, -2));
  CHECK(word_from_json(word_to_json(word)) == word);
}

TEST_CASE("representation JSON round trip is bit exact") {
  RepresentationQ rho = build_representation(4, 5);
  json j = representation_to_json(rho);
  validate_against_schema(j, "representation");
  auto back = representation_from_json<GaussianRational>(j);
  CHECK(back.images().size() == rho.images().size());
  for (std::size_t i = 0; i < rho.images().size(); ++i)
    CHECK(back.images()[i] == rho.images()[i]);
  // Serialization is deterministic.
  CHECK(representation_to_json(back).dump() == j.dump());
}

TEST_CASE("schema validation") {
  json good = {{"kind", "surface"}, {"genus", 3}};
  validate_against_schema(good, "presentation");
  json bad = {{"kind", "torus"}};
  CHECK_THROWS_AS(validate_against_schema(bad, "presentation"), DomainError);
  json not_mat = json::array({1, 2, 3});
  CHECK_THROWS_AS(validate_against_schema(not_mat, "mat2"), DomainError);
}

TEST_CASE("cli dims") {
  std::string out;
  int code = run_cli({"dims", "--genus", "3", "--query", "whole"}, "", &out);
  CHECK(code == 0);
  CHECK(out == "12\n");
  code = run_cli({"dims", "--genus", "4", "--query", "Z_locus"}, "", &out);
  CHECK(code == 0);
  CHECK(out == "17\n");
  code = run_cli(
      {"dims", "--genus", "3", "--query", "kill_separating", "--g1", "1"}, "",
      &out);
  CHECK(code == 0);
  CHECK(out == "10\n");
}

TEST_CASE("cli usage errors exit 2") {
  std::string out, err;
  int code = run_cli({"dims", "--bogus-flag"}, "", &out, &err);
  CHECK(code == 2);
  code = run_cli({"no-such-command"}, "", &out, &err);
  CHECK(code == 2);
  // Domain errors from inputs also map to 2.
  code = run_cli({"dims", "--genus", "2", "--query", "kill_nonseparating"},
                 "", &out, &err);
  CHECK(code == 2);
}

TEST_CASE("cli build-rep then certify (pipe)") {
  std::string rep_json;
  int code = run_cli({"build-rep", "--genus", "4", "--seed", "7"}, "",
                     &rep_json);
  REQUIRE(code == 0);
  // Deterministic output for a fixed seed.
  std::string rep_json2;
  run_cli({"build-rep", "--genus", "4", "--seed", "7"}, "", &rep_json2);
  CHECK(rep_json == rep_json2);

  std::string cert_out;
  code = run_cli({"certify", "--catalog-depth", "1", "--samples", "50",
                  "--max-len", "6", "--seed", "7"},
                 rep_json, &cert_out);
  CHECK(code == 0);  // PASS
  json cert = json::parse(cert_out);
  validate_against_schema(cert, "certificate");
  CHECK(cert["pass"].get<bool>());
  CHECK(cert["w_conditions"]["w1"]["satisfied"].get<bool>());
}

TEST_CASE("cli solve-fiber and exact target") {
  std::string out;
  int code = run_cli({"solve-fiber", "--m", "4", "--sqrt-m", "2"}, "", &out);
  REQUIRE(code == 0);
  json fp = json::parse(out);
  validate_against_schema(fp, "fiber_point");
  CHECK(fp["residual"].get<double>() == 0.0);

  // Exact solve for a non-diagonal target (det = 3 - 2 = 1, trace 4).
  json target = {
      {"matrix",
       json::array({json::array({json::array({"3", "0"}),
                                 json::array({"1", "0"})}),
                    json::array({json::array({"2", "0"}),
                                 json::array({"1", "0"})})})}};
  code = run_cli({"solve-fiber", "--target", "-"}, target.dump(), &out);
  CHECK(code == 0);
  json fp2 = json::parse(out);
  CHECK(fp2["residual"].get<double>() == 0.0);

  // m = -1 is excluded: usage error.
  std::string err;
  code = run_cli({"solve-fiber", "--m", "-1", "--sqrt-m", "i"}, "", &out,
                 &err);
  CHECK(code == 2);
}

TEST_CASE("cli detect-irreducible") {
  json rep = {{"presentation", {{"kind", "free"}, {"rank", 2}}},
              {"images",
               json::array({json::array({json::array({"2", "0"}),
                                         json::array({"0", "0"})}),
                            json::array({json::array({"0", "0"}),
                                         json::array({"0", "0"})})})}};
  // Fill images properly: diag(2, 1/2) and [[1,1],[1,2]].
  rep["images"][0] = json::array(
      {json::array({json::array({"2", "0"}), json::array({"0", "0"})}),
       json::array({json::array({"0", "0"}), json::array({"1/2", "0"})})});
  rep["images"][1] = json::array(
      {json::array({json::array({"1", "0"}), json::array({"1", "0"})}),
       json::array({json::array({"1", "0"}), json::array({"2", "0"})})});
  std::string out;
  int code = run_cli({"detect-irreducible"}, rep.dump(), &out);
  REQUIRE(code == 0);
  json w = json::parse(out);
  CHECK(w["d_form"].get<std::string>() == "direct");

  // A reducible input is a domain error (exit 2).
  json red = rep;
  red["images"][1] = json::array(
      {json::array({json::array({"1", "0"}), json::array({"1", "0"})}),
       json::array({json::array({"0", "0"}), json::array({"1", "0"})})});
  std::string err;
  code = run_cli({"detect-irreducible"}, red.dump(), &out, &err);
  CHECK(code == 2);
}

TEST_CASE("cli lift-path with files") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "repvar_cli_test";
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const json& j) {
    std::ofstream f(dir / name);
    f << j.dump();
    return (dir / name).string();
  };

  // Constant target diag(4, 1/4); start = end = base point.
  std::string fp_json;
  int code = run_cli({"--backend", "float", "solve-fiber", "--m", "4",
                      "--sqrt-m", "2"},
                     "", &fp_json);
  REQUIRE(code == 0);
  json fp = json::parse(fp_json);
  json target = fp["target"];
  json path;
  path["samples"] = json::array();
  for (int k = 0; k <= 8; ++k)
    path["samples"].push_back({{"t", k / 8.0}, {"matrices", {target}}});
  path["step_bound"] = 0.0;

  std::string path_file = write("path.json", path);
  std::string start_file = write("start.json", fp);
  std::string end_file = write("end.json", fp);
  std::string out;
  code = run_cli({"lift-path", "--path", path_file, "--start", start_file,
                  "--end", end_file, "--steps", "16"},
                 "", &out);
  REQUIRE(code == 0);
  json lifted = json::parse(out);
  CHECK(lifted["max_residual"].get<double>() <= 1e-8);
  CHECK(lifted["samples"].size() >= 17);

  // deform: trivial target (current boundary) returns the input unchanged.
  // Build a float genus-2 representation [A,B][B,A] = I.
  std::mt19937_64 rng(79);
  Mat2c A = test::rand_sl2c(rng), B = test::rand_sl2c(rng);
  // genus-3 so the complement (handles 2..3) has genus 2.
  json rep = {{"presentation", {{"kind", "surface"}, {"genus", 3}}},
              {"images",
               json::array({mat2_to_json(A), mat2_to_json(B),
                            mat2_to_json(B), mat2_to_json(A),
                            mat2_to_json(Mat2c::identity()),
                            mat2_to_json(Mat2c::identity())})}};
  Mat2c tail = mat_commutator(B, A);  // handle-2 commutator; handle 3 is I
  json boundary = {{"matrix", mat2_to_json(tail.as_sl2(1e-6))}};
  std::string rep_file = write("rep.json", rep);
  std::string boundary_file = write("boundary.json", boundary);
  code = run_cli({"deform", "--rep", rep_file, "--boundary", boundary_file,
                  "--fixed", "0", "--fixed", "1", "--max-norm", "0.01"},
                 "", &out);
  REQUIRE(code == 0);
  json outrep = json::parse(out);
  validate_against_schema(outrep, "representation");

  fs::remove_all(dir);
}

TEST_CASE("cli lift-character") {
  // Character of the sgood representation (a,b,c) = (1, 3, 1/2), rank 2.
  SGoodCoords<GaussianRational> coords(gq(1), gq(3), gq(1, 2));
  auto words = sgood_character_words(2);
  auto x = character_of(coords.to_representation(), words);
  std::string out;
  int code = run_cli({"lift-character", "--sheet", "1"},
                     character_to_json(x).dump(), &out);
  REQUIRE(code == 0);
  json res = json::parse(out);
  CHECK(scalar_q_from_json(res["coords"]["b"]) == gq(3));
  code = run_cli({"lift-character", "--sheet", "2"},
                 character_to_json(x).dump(), &out);
  REQUIRE(code == 0);
  res = json::parse(out);
  CHECK(scalar_q_from_json(res["coords"]["b"]) == gq(1, 3));
}
