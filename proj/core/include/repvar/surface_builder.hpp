#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repvar/representation.hpp"
#include "repvar/trace_lab.hpp"

namespace repvar {

// The curves of the three-piece surface decomposition (genus >= 3,
// k = genus - 2):
// C = [a1,b1] bounds the genus-1 piece F1, C' = [a_{k+2}, b_{k+2}] bounds
// F3, C'' = [a1,b1][a2,b2].
struct StandardCurves {
  FreeWord C, C_prime, C_double_prime, beta1, comm_a2b2;
};
StandardCurves standard_curves(int genus);

// Constructs a genus >= 4 exact representation with tr rho(C) = 2:
// upper-triangular nonabelian first handle, alpha_2 moving infinity,
// tr rho[a2,b2] outside {2,-2}, free middle handles with non-real traces,
// last handle solved exactly so the relator holds.
RepresentationQ build_representation(int genus, std::uint64_t seed);

// Deterministic finite catalog of simple-closed-curve words: generators,
// same-handle products, proper contiguous boundary words, and generator
// images under <= depth elementary mapping-class moves (transvections and
// adjacent handle swaps).  Capped at a fixed size; >= 50 words at depth 2.
std::vector<FreeWord> scc_default_catalog(int genus, int depth);

enum class DimensionQuery {
  whole,
  kill_nonseparating,
  kill_separating,
  z_locus,
};

// Dimension table for the character variety: 6g-6 for the whole space,
// 6g-9 after killing a nonseparating curve, 6g-8 (separating off a torus) or
// 6g-9 (both sides genus >= 2), and 6g-7 for the Z locus.
int dimension_calculator(int genus, DimensionQuery query, int g1 = 0);

// Second route: the same dimensions recomputed through the free-product
// formula dim X = dim R(A) + dim R(B) - 3 with dim R(Z) = 3,
// dim R(Z+Z) = 4, dim R(genus h surface) = 6h - 3.
int dimension_by_product_formula(int genus, DimensionQuery query, int g1 = 0);

struct WConditionRecord {
  std::string name;
  GaussianRational value;
  bool satisfied = false;
};

struct WConditions {
  WConditionRecord w1, w2, w3, w4, w5;
  bool all_satisfied() const {
    return w1.satisfied && w2.satisfied && w3.satisfied && w4.satisfied &&
           w5.satisfied;
  }
};

struct SccCheck {
  FreeWord word;
  GaussianRational trace;
  bool killed = false;  // image is +-I
};

struct RealTraceSample {
  FreeWord word;
  GaussianRational trace;
  bool real = false;
  bool image_identity = false;   // evaluated to I (trace 2 forced)
  bool image_parabolic = false;  // trace 2, image != I
  bool disallowed = false;       // trace in R \ {2}: an E-style violation
};

struct Certificate {
  WConditions w;
  mpq_class relator_residual;
  FreeWord kernel_witness_word;
  mpq_class witness_residual;
  std::vector<SccCheck> scc_checks;
  std::vector<RealTraceSample> real_trace_samples;
  std::uint64_t seed = 0;
  int sample_count = 0;
  int max_word_len = 0;
  bool pass = false;
  std::vector<std::string> failures;
};

// Evaluates the W conditions, the kernel witness, the catalog, and sampled
// real-trace checks; failures are recorded, not thrown.  All arithmetic is
// exact.
Certificate certify(const RepresentationQ& rho,
                    const std::vector<FreeWord>& scc_catalog,
                    int n_real_samples, int max_word_len, std::uint64_t seed);

}  // namespace repvar
