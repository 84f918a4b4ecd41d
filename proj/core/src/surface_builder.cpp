#include "repvar/surface_builder.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "repvar/fibers.hpp"

namespace repvar {

StandardCurves standard_curves(int genus) {
  if (genus < 3)
    throw DomainError("standard curves need genus >= 3 (F1, F2, F3 pieces)");
  Presentation pres = Presentation::surface(genus);
  auto handle_comm = [&](int i) {
    return word_commutator(FreeWord::generator(pres.alpha(i)),
                           FreeWord::generator(pres.beta(i)));
  };
  StandardCurves sc;
  sc.C = handle_comm(1);
  sc.C_prime = handle_comm(genus);  // k + 2 with k = genus - 2
  sc.C_double_prime = sc.C * handle_comm(2);
  sc.beta1 = FreeWord::generator(pres.beta(1));
  sc.comm_a2b2 = handle_comm(2);
  return sc;
}

namespace {

using GQ = GaussianRational;

// Small random Gaussian rational with bounded numerators/denominators.
GQ random_small(std::mt19937_64& rng, bool force_nonreal_imag = false) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 3);
  long im_num = num(rng);
  if (force_nonreal_imag && im_num == 0) im_num = 1;
  return GQ(make_rational(num(rng), den(rng)), make_rational(im_num, den(rng)));
}

// Random exact SL2 matrix [[p, q],[r, (1+qr)/p]].
Mat2q random_sl2(std::mt19937_64& rng, bool nonzero_lower_left,
                 bool nonreal_trace) {
  for (int tries = 0; tries < 200; ++tries) {
    GQ p = random_small(rng);
    if (p.is_zero()) continue;
    GQ q = random_small(rng);
    GQ r = random_small(rng);
    if (nonzero_lower_left && r.is_zero()) continue;
    GQ d = (GQ(1) + q * r) / p;
    Mat2q m(p, q, r, d, true);
    if (nonreal_trace && m.trace().is_real()) continue;
    return m;
  }
  throw NumericError("random_sl2: rejection sampling exhausted");
}

bool trace_is_pm2(const GQ& t) { return t == GQ(2) || t == GQ(-2); }

// No generator power up to the sampling length, and no two-letter product,
// may have real trace other than 2 (the E-membership obstruction is checked
// on sampled words; powers and short products are the structured cases).
bool traces_safe(const std::vector<Mat2q>& imgs, int max_power) {
  auto bad = [](const GQ& t) { return t.is_real() && t != GQ(2); };
  for (const auto& m : imgs) {
    Mat2q p = Mat2q::identity();
    for (int k = 1; k <= max_power; ++k) {
      p = p * m;
      if (bad(p.trace())) return false;
    }
  }
  for (std::size_t i = 0; i < imgs.size(); ++i)
    for (std::size_t j = i + 1; j < imgs.size(); ++j) {
      if (bad((imgs[i] * imgs[j]).trace())) return false;
      if (bad((imgs[i] * imgs[j].inverse()).trace())) return false;
    }
  return true;
}

}  // namespace

RepresentationQ build_representation(int genus, std::uint64_t seed) {
  if (genus < 4) throw DomainError("build_representation needs genus >= 4");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Presentation pres = Presentation::surface(genus);

  // First handle: upper triangular, nonabelian, with diagonal entries whose
  // norms are distinct Gaussian primes (5 and 13).  Every word with a
  // nonzero exponent sum then has non-real trace, and commutator-subgroup
  // words have trace exactly 2.
  const GQ lambda(make_rational(2), make_rational(1));   // 2 + i
  const GQ mu(make_rational(3), make_rational(2));       // 3 + 2i
  Mat2q A1, B1;
  for (int tries = 0;; ++tries) {
    if (tries > 100) throw NumericError("first-handle sampling exhausted");
    GQ d = random_small(rng);
    GQ e = random_small(rng);
    // Nonabelian iff e mu (lambda^2 - 1) != d lambda (mu^2 - 1).
    if (e * mu * (lambda * lambda - GQ(1)) ==
        d * lambda * (mu * mu - GQ(1)))
      continue;
    A1 = Mat2q(lambda, d, GQ(0), lambda.inverse(), true);
    B1 = Mat2q(mu, e, GQ(0), mu.inverse(), true);
    break;
  }
  Mat2q C = mat_commutator(A1, B1);
  if (!(C.trace() == GQ(2)) || C.is_identity())
    throw NumericError("first handle did not give a nontrivial parabolic");

  std::vector<Mat2q> images(2 * genus, Mat2q::identity());
  images[pres.alpha(1)] = A1;
  images[pres.beta(1)] = B1;

  for (int attempt = 0; attempt < 64; ++attempt) {
    // alpha_2 moves infinity (nonzero lower-left); beta_2 with
    // tr[A2, B2] outside {2, -2}.
    Mat2q A2 = random_sl2(rng, /*nonzero_lower_left=*/true,
                          /*nonreal_trace=*/true);
    Mat2q B2;
    bool ok = false;
    for (int tries = 0; tries < 100; ++tries) {
      B2 = random_sl2(rng, false, true);
      GQ t = mat_commutator(A2, B2).trace();
      if (!trace_is_pm2(t)) {
        ok = true;
        break;
      }
    }
    if (!ok) continue;
    images[pres.alpha(2)] = A2;
    images[pres.beta(2)] = B2;

    for (int i = 3; i <= genus - 1; ++i) {
      images[pres.alpha(i)] = random_sl2(rng, false, true);
      images[pres.beta(i)] = random_sl2(rng, false, true);
    }

    Mat2q prefix = Mat2q::identity();
    for (int i = 1; i <= genus - 1; ++i)
      prefix = prefix *
               mat_commutator(images[pres.alpha(i)], images[pres.beta(i)]);
    Mat2q M = prefix.inverse().as_sl2();
    if (trace_is_pm2(M.trace())) continue;  // re-seed the free handles

    FiberPointQ last = solve_commutator(M);
    images[pres.alpha(genus)] = last.A;
    images[pres.beta(genus)] = last.B;
    if (!traces_safe(images, 8)) continue;
    return RepresentationQ(pres, images);
  }
  throw DomainError("build_representation: unlucky seed exhausted retries");
}

std::vector<FreeWord> scc_default_catalog(int genus, int depth) {
  if (genus < 2) throw DomainError("catalog needs genus >= 2");
  Presentation pres = Presentation::surface(genus);
  const int n = 2 * genus;

  std::vector<FreeWord> catalog;
  std::set<FreeWord> seen;
  auto push = [&](const FreeWord& w) {
    if (w.empty()) return;
    if (seen.insert(w).second) catalog.push_back(w);
  };

  for (int g = 0; g < n; ++g) push(FreeWord::generator(g));
  for (int i = 1; i <= genus; ++i)
    push(FreeWord::generator(pres.alpha(i)) *
         FreeWord::generator(pres.beta(i)));
  // Proper contiguous subsurface boundaries (the full range is the relator).
  for (int lo = 1; lo <= genus; ++lo)
    for (int hi = lo; hi <= genus; ++hi) {
      if (lo == 1 && hi == genus) continue;
      FreeWord w;
      for (int i = lo; i <= hi; ++i)
        w = w * word_commutator(FreeWord::generator(pres.alpha(i)),
                                FreeWord::generator(pres.beta(i)));
      push(w);
    }

  if (depth <= 0) return catalog;

  // Elementary mapping-class moves as free-group endomorphisms.
  std::vector<std::vector<FreeWord>> moves;
  auto identity_images = [&] {
    std::vector<FreeWord> imgs;
    for (int g = 0; g < n; ++g) imgs.push_back(FreeWord::generator(g));
    return imgs;
  };
  for (int i = 1; i <= genus; ++i) {
    for (int sgn : {1, -1}) {
      auto t1 = identity_images();  // alpha_i -> alpha_i beta_i^sgn
      t1[pres.alpha(i)] = FreeWord::generator(pres.alpha(i)) *
                          FreeWord::generator(pres.beta(i), sgn);
      moves.push_back(std::move(t1));
      auto t2 = identity_images();  // beta_i -> beta_i alpha_i^sgn
      t2[pres.beta(i)] = FreeWord::generator(pres.beta(i)) *
                         FreeWord::generator(pres.alpha(i), sgn);
      moves.push_back(std::move(t2));
    }
  }
  for (int i = 1; i < genus; ++i) {
    auto sw = identity_images();  // swap handles i and i+1
    std::swap(sw[pres.alpha(i)], sw[pres.alpha(i + 1)]);
    std::swap(sw[pres.beta(i)], sw[pres.beta(i + 1)]);
    moves.push_back(std::move(sw));
  }

  const std::size_t cap = 400;
  std::vector<std::vector<FreeWord>> frontier = {identity_images()};
  for (int d = 0; d < depth && catalog.size() < cap; ++d) {
    std::vector<std::vector<FreeWord>> next;
    for (const auto& base : frontier) {
      for (const auto& mv : moves) {
        std::vector<FreeWord> composed;
        composed.reserve(n);
        for (int g = 0; g < n; ++g) composed.push_back(mv[g].substitute(base));
        for (int g = 0; g < n && catalog.size() < cap; ++g)
          push(composed[g]);
        if (d + 1 < depth) next.push_back(std::move(composed));
        if (catalog.size() >= cap) break;
      }
      if (catalog.size() >= cap) break;
    }
    frontier = std::move(next);
  }
  return catalog;
}

int dimension_calculator(int genus, DimensionQuery query, int g1) {
  switch (query) {
    case DimensionQuery::whole:
      if (genus < 2) throw DomainError("whole: genus >= 2");
      return 6 * genus - 6;
    case DimensionQuery::kill_nonseparating:
      if (genus < 3) throw DomainError("kill queries need genus >= 3");
      return 6 * genus - 9;
    case DimensionQuery::kill_separating: {
      if (genus < 3) throw DomainError("kill queries need genus >= 3");
      if (g1 < 1 || g1 > genus - 1)
        throw DomainError("kill_separating: need 1 <= g1 <= genus-1");
      int g2 = genus - g1;
      return (g1 == 1 || g2 == 1) ? 6 * genus - 8 : 6 * genus - 9;
    }
    case DimensionQuery::z_locus:
      if (genus < 2) throw DomainError("z_locus: genus >= 2");
      return 6 * genus - 7;
  }
  throw DomainError("unknown dimension query");
}

int dimension_by_product_formula(int genus, DimensionQuery query, int g1) {
  auto rep_dim_surface = [](int h) { return 6 * h - 3; };
  const int rep_dim_z = 3, rep_dim_zz = 4;
  switch (query) {
    case DimensionQuery::whole:
      if (genus < 2) throw DomainError("whole: genus >= 2");
      return rep_dim_surface(genus) - 3;
    case DimensionQuery::kill_nonseparating:
      if (genus < 3) throw DomainError("kill queries need genus >= 3");
      return rep_dim_z + rep_dim_surface(genus - 1) - 3;
    case DimensionQuery::kill_separating: {
      if (genus < 3) throw DomainError("kill queries need genus >= 3");
      if (g1 < 1 || g1 > genus - 1)
        throw DomainError("kill_separating: need 1 <= g1 <= genus-1");
      int g2 = genus - g1;
      if (g1 == 1 || g2 == 1) {
        int other = g1 == 1 ? g2 : g1;
        return rep_dim_zz + rep_dim_surface(other) - 3;
      }
      return rep_dim_surface(g1) + rep_dim_surface(g2) - 3;
    }
    case DimensionQuery::z_locus:
      if (genus < 2) throw DomainError("z_locus: genus >= 2");
      return rep_dim_surface(genus) - 3 - 1;
  }
  throw DomainError("unknown dimension query");
}

namespace {

FreeWord random_reduced_word(std::mt19937_64& rng, int n_gens, int max_len) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> gen_dist(0, n_gens - 1);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  int len = len_dist(rng);
  std::vector<FreeWord::Syllable> letters;
  int prev_gen = -1;
  std::int64_t prev_sign = 0;
  for (int k = 0; k < len; ++k) {
    int g;
    std::int64_t s;
    do {
      g = gen_dist(rng);
      s = sign_dist(rng) ? 1 : -1;
    } while (g == prev_gen && s == -prev_sign);
    letters.push_back({g, s});
    prev_gen = g;
    prev_sign = s;
  }
  return FreeWord(std::move(letters));
}

}  // namespace

Certificate certify(const RepresentationQ& rho,
                    const std::vector<FreeWord>& scc_catalog,
                    int n_real_samples, int max_word_len, std::uint64_t seed) {
  const Presentation& pres = rho.presentation();
  if (!pres.is_surface() || pres.genus() < 3)
    throw DomainError("certify needs a surface representation of genus >= 3");

  Certificate cert;
  cert.seed = seed;
  cert.sample_count = n_real_samples;
  cert.max_word_len = max_word_len;
  cert.relator_residual = rho.relator_residual();
  if (cert.relator_residual != 0)
    cert.failures.push_back("relator residual nonzero");

  StandardCurves sc = standard_curves(pres.genus());
  auto x_of = [&](const FreeWord& w) { return rho.evaluate(w).trace(); };

  const GQ two(2);
  GaussianRational xc = x_of(sc.C);
  cert.w.w1 = {"W-1: x(C) = 2", xc, xc == two};
  GaussianRational xb1 = x_of(sc.beta1);
  cert.w.w2 = {"W-2: x(beta1) != +-2", xb1, !trace_is_pm2(xb1)};
  GaussianRational xab2 = x_of(sc.comm_a2b2);
  cert.w.w3 = {"W-3: x([a2,b2]) != +-2", xab2, !trace_is_pm2(xab2)};
  FreeWord w4_word = word_commutator(sc.C, FreeWord::generator(pres.alpha(2)));
  GaussianRational xw4 = x_of(w4_word);
  cert.w.w4 = {"W-4: x([C,a2]) != 2", xw4, xw4 != two};
  GaussianRational xcp = x_of(sc.C_prime);
  cert.w.w5 = {"W-5: x(C') != +-2", xcp, !trace_is_pm2(xcp)};
  if (!cert.w.all_satisfied()) cert.failures.push_back("W condition failed");

  cert.kernel_witness_word = kernel_witness();
  if (cert.kernel_witness_word.empty())
    cert.failures.push_back("kernel witness word is trivial");
  Mat2q witness_image = rho.evaluate(cert.kernel_witness_word);
  cert.witness_residual =
      max_norm_distance(witness_image, Mat2q::identity());
  if (cert.witness_residual != 0)
    cert.failures.push_back("kernel witness image is not the identity");

  for (const auto& w : scc_catalog) {
    SccCheck chk;
    chk.word = w;
    Mat2q img = rho.evaluate(w);
    chk.trace = img.trace();
    chk.killed = img.is_central();
    if (chk.killed)
      cert.failures.push_back("catalog word killed: " + w.to_string());
    cert.scc_checks.push_back(std::move(chk));
  }

  std::mt19937_64 rng(seed ^ 0xa5a5a5a55a5a5a5aULL);
  for (int k = 0; k < n_real_samples; ++k) {
    RealTraceSample s;
    s.word = random_reduced_word(rng, pres.num_generators(), max_word_len);
    Mat2q img = rho.evaluate(s.word);
    s.trace = img.trace();
    s.real = s.trace.is_real();
    if (s.real) {
      if (s.trace == two) {
        s.image_identity = img.is_identity();
        s.image_parabolic = !s.image_identity;
      } else {
        // x(w) in R \ {2}: the E-membership obstruction.
        s.disallowed = true;
        cert.failures.push_back("sampled word has real trace != 2: " +
                                s.word.to_string());
      }
    }
    cert.real_trace_samples.push_back(std::move(s));
  }

  cert.pass = cert.failures.empty();
  return cert;
}

}  // namespace repvar
