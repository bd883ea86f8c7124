#pragma once

// Sullivan minimal models by degree induction, bouquets of odd spheres
// (kept as cohomology tables), truncations M_k and the comparison maps into
// a target with vanishing even cohomology.

#include "sullivan/algebra.hpp"
#include "sullivan/cohomology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sullivan {

struct BouquetLabel {
  std::string name;
  int degree = 1;
};

// Odd-degree labels; all products of positive-degree classes vanish and d = 0.
struct BouquetSpec {
  std::vector<BouquetLabel> labels;

  // Throws InvalidInput on an even or non-positive degree or a repeated name.
  void check() const;
};

struct BouquetDegree {
  std::size_t dimension = 0;
  std::vector<std::string> labels;
};

BouquetDegree bouquet_cohomology(const BouquetSpec& spec, int n);

struct MinimalModel {
  DGAlgebra model;
  // Set when the target is a concrete algebra.
  std::optional<Morphism> target_map;
  // Bouquet targets: for each model generator, its linear part in the label
  // basis (index into spec.labels); longer monomials map to zero.
  std::vector<SparseVector> label_map;
  std::vector<BouquetLabel> labels;
  int cutoff = 0;

  [[nodiscard]] std::map<int, std::size_t> generator_counts() const;
};

struct ModelOptions {
  int max_rounds = 16;  // repeated V2 passes per degree (only needed with degree-1 generators)
};

// Throws InvalidInput if validate(target, cutoff + 1) fails or dim H^1 >= 2,
// ResourceBound if the per-degree iteration does not settle.
MinimalModel minimal_model(const DGAlgebra& target, int cutoff, ModelOptions opt = {});
MinimalModel bouquet_model(const BouquetSpec& spec, int cutoff, ModelOptions opt = {});

struct DegreeIso {
  int degree = 0;
  std::size_t model_dimension = 0;
  std::size_t target_dimension = 0;
  bool isomorphism = false;
};

// Induced maps on H^n, 0 <= n <= cutoff.
std::vector<DegreeIso> cohomology_comparison(const MinimalModel& m, int cutoff);
bool is_quasi_isomorphism(const MinimalModel& m, int cutoff);

// True iff no d(generator) has a linear term.
bool is_minimal(const DGAlgebra& a);

struct Truncation {
  DGAlgebra subalgebra;
  int k = 0;
  std::vector<GeneratorId> parent_ids;
};

// Throws InvalidInput when d of a kept generator leaves the truncation.
Truncation truncate(const DGAlgebra& model, int k);

struct LemmaCheck {
  int k = 0;
  std::size_t h_k1 = 0;  // dim H^{k+1}(M_k)
  std::size_t h_k2 = 0;  // dim H^{k+2}(M_k)
  [[nodiscard]] bool ok() const { return h_k1 == 0 && h_k2 == 0; }
};

LemmaCheck lemma_5_1_check(const Truncation& t);

struct GeneratorRepresentation {
  int degree = 0;
  std::size_t betti = 0;
  std::size_t represented = 0;  // rank of the classes of cocycle combinations of generators
  [[nodiscard]] bool ok() const { return represented == betti; }
};

GeneratorRepresentation generator_representation(const DGAlgebra& model, int n);

// H^{2k}(B) = 0 for 0 < 2k <= limit; returns the offending degree otherwise.
std::optional<int> first_even_class(const DGAlgebra& b, int limit);

// The induced map M_k -> B for odd k <= 2N - 1. Throws InvalidInput when
// B has even cohomology in degrees 2..2N or k is even or out of range.
Morphism build_phi_k(const DGAlgebra& b, int n_half, int k);

struct ModelComparison {
  int n_half = 0;
  std::map<int, std::size_t> model_counts;    // minimal model of B
  std::map<int, std::size_t> bouquet_counts;  // bouquet on the odd classes of B
  std::vector<BouquetLabel> labels;
  bool counts_equal = false;
  bool model_quasi_isomorphism = false;
  bool bouquet_quasi_isomorphism = false;

  [[nodiscard]] bool ok() const {
    return counts_equal && model_quasi_isomorphism && bouquet_quasi_isomorphism;
  }
};

ModelComparison compare_models(const DGAlgebra& b, int n_half);

// One label per canonical basis class of H^n(b), n odd, 1 <= n <= limit.
BouquetSpec bouquet_of_classes(const DGAlgebra& b, int limit);

struct PsiResult {
  Morphism psi;
  GeneratorId representing = 0;   // generator g0 replaced by alpha's representative
  Element combination;            // generator combination representing alpha
  Element image_of_alpha;         // psi(alpha)
};

// Projection onto Λ(eta) sending the generator that represents alpha to eta
// and every complementary generator to zero. Throws InvalidInput for zero or
// even alpha, or when alpha has no generator representative.
PsiResult psi_to_sphere(const DGAlgebra& mb, const CohomologyClass& alpha,
                        const std::string& eta = "eta");

struct OddBouquetReport {
  int cutoff = 0;
  MinimalModel model;
  std::map<int, std::size_t> bouquet_counts;
  std::vector<BouquetLabel> labels;
  bool odd_generators_only = true;
  std::vector<GeneratorRepresentation> represented;
  int compared_through = 0;
  bool counts_equal = true;

  [[nodiscard]] bool ok() const;
};

OddBouquetReport verify_odd_bouquet_model(const DGAlgebra& c, int cutoff);

struct LieTable {
  std::vector<long> by_length;            // index l - 1
  std::map<int, long> by_model_degree;    // weight + 1
};

// Free graded Lie algebra on letters of degree |x| - 1 (even), counted by
// Lyndon words. Throws InvalidInput for letters of even degree or degree 1.
LieTable free_lie_dimensions(const std::vector<int>& letter_degrees, int max_length);

}  // namespace sullivan
