#pragma once

// Algebraic fibrations B -> B ⊗ ΛV with the fiber generators filtered by
// stage, odd spherical attachments, the Gysin sequence, the tower that kills
// even cohomology, algebraic fibers and push-forwards.

#include "sullivan/algebra.hpp"
#include "sullivan/cohomology.hpp"

#include <string>
#include <vector>

namespace sullivan {

class Fibration {
 public:
  // `total` must start with the generators of `base` (same names, degrees and
  // differentials, same order); the remaining generators are the fiber, with
  // one stage per fiber generator.
  Fibration(DGAlgebra base, DGAlgebra total, std::vector<int> stages);
  static Fibration trivial(DGAlgebra base);

  [[nodiscard]] const DGAlgebra& base() const { return base_; }
  [[nodiscard]] const DGAlgebra& total() const { return total_; }
  [[nodiscard]] std::size_t base_size() const { return base_.size(); }
  [[nodiscard]] std::size_t fiber_size() const { return stages_.size(); }
  [[nodiscard]] const std::vector<int>& stages() const { return stages_; }
  [[nodiscard]] bool is_fiber(GeneratorId total_id) const { return total_id >= base_size(); }
  [[nodiscard]] int stage_of(GeneratorId total_id) const;  // -1 for base generators
  [[nodiscard]] std::vector<GeneratorId> fiber_generators() const;

  // `differential` is an element of the total algebra extended by the new generator.
  [[nodiscard]] Fibration with_fiber_generator(const std::string& name, int degree,
                                               const Element& differential, int stage) const;
  [[nodiscard]] Morphism inclusion() const;

 private:
  DGAlgebra base_;
  DGAlgebra total_;
  std::vector<int> stages_;
};

struct EulerData {
  GeneratorId attached_generator = 0;  // id in the total algebra
  CohomologyClass euler_class;
};

struct Attachment {
  Fibration fibration;
  EulerData euler;
};

// Adds x of degree 2k-1 with dx = beta.representative. Throws InvalidInput
// if beta is not a cocycle of positive even degree.
Attachment attach_odd_sphere(const DGAlgebra& base, const CohomologyClass& beta,
                             const std::string& name = "x");

struct GysinNode {
  std::string label;  // e.g. "H^4(B)", "H^4(E)"
  int degree = 0;
  bool exact = true;
};

struct KernelLaw {
  int i = 0;                     // ker of H^{i+2k}(B) -> H^{i+2k}(E) against H^i(B)·beta
  std::size_t kernel_dimension = 0;
  std::size_t cup_image_dimension = 0;
  bool equal = true;
};

struct GysinReport {
  int euler_degree = 0;
  int cutoff = 0;
  std::vector<GysinNode> nodes;
  std::vector<KernelLaw> kernel_law;

  [[nodiscard]] bool ok() const;
  [[nodiscard]] const GysinNode* first_failure() const;
};

// Requires a fibration with a single odd fiber generator x at stage 0, dx in
// the base. Checks exactness of
//   H^{j-2k}(B) -(·e)-> H^j(B) -> H^j(E) -> H^{j-2k+1}(B) -(·e)-> H^{j+1}(B)
// at every node for 0 <= j <= cutoff, and ker = H^i(B)·e.
GysinReport gysin_verify(const Fibration& fib, int cutoff);

struct KillStage {
  Fibration fibration;                   // over the input algebra
  std::vector<CohomologyClass> killed;   // in the input algebra, one per new generator
  std::vector<GeneratorId> new_generators;
};

// One generator of degree 2k-1 per canonical representative of H^{2k},
// 0 < 2k <= cutoff, named s{stage}_{2k}_{i}.
KillStage kill_even_stage(const DGAlgebra& current, int cutoff, int stage = 1);
// Every killed representative is exact in the stage's total algebra.
bool zero_map_holds(const KillStage& s);

struct TowerStage {
  DGAlgebra algebra;                      // A_m
  std::vector<GeneratorId> new_generators;  // ids in A_m added at this stage
  std::vector<CohomologyClass> killed;     // classes of A_{m-1}
  bool zero_map = true;
};

struct Tower {
  DGAlgebra base;                // A_0
  std::vector<TowerStage> stages;  // A_1, A_2, ...
  int cutoff = 0;
  bool converged = false;
  std::vector<std::size_t> final_betti;  // of the last algebra through cutoff

  [[nodiscard]] const DGAlgebra& last() const {
    return stages.empty() ? base : stages.back().algebra;
  }
  // Tower stage (1-based) of a generator of last(); 0 for base generators.
  [[nodiscard]] int stage_of(GeneratorId g) const;
  // The last algebra as a fibration over A_0; generators added at tower
  // stage m sit in filtration stage m - 1.
  [[nodiscard]] Fibration as_fibration() const;
  [[nodiscard]] std::vector<std::pair<int, std::size_t>> residual_even_betti() const;
};

Tower build_tower(const DGAlgebra& a0, int cutoff, int max_stages);

struct Subtower {
  Fibration fibration;               // S_alpha over A_0
  int dies_at_stage = 0;             // first tower stage where alpha is exact
  Element killing_preimage;          // theta in S_alpha with d theta = alpha
  std::vector<std::string> generators;
};

// Throws InvalidInput when alpha does not die within the recorded stages.
Subtower finite_subtower(const Tower& t, const CohomologyClass& alpha);

// Fiber generators (by total id) closed under differential support.
Fibration restrict_fiber(const Fibration& fib, std::vector<GeneratorId> keep);

DGAlgebra algebraic_fiber(const Fibration& fib);

struct ProbeVerdict {
  enum class Kind { FiniteUpTo, NonzeroNearCutoff };
  Kind kind = Kind::FiniteUpTo;
  int top_degree = 0;             // highest nonzero degree through cutoff
  std::vector<int> nonzero_degrees;
  std::vector<std::size_t> betti;
  int cutoff = 0;
  int margin = 2;

  [[nodiscard]] bool finite() const { return kind == Kind::FiniteUpTo; }
};

std::string_view to_string(ProbeVerdict::Kind k);

ProbeVerdict probe_cohomology(const DGAlgebra& a, int cutoff, int margin = 2);
ProbeVerdict fiber_dimension_probe(const Fibration& fib, int cutoff, int margin = 2);

// Same fiber generators over psi's target with differentials (psi ⊗ 1)(dv).
Fibration pushforward(const Fibration& fib, const Morphism& psi);

struct FibrationReport {
  ValidationReport dga;         // d^2 = 0 and degrees
  ValidationReport filtration;  // stage condition
  bool minimal = true;
  std::vector<std::string> non_minimal;  // generators whose d has a bare fiber-linear term

  [[nodiscard]] bool ok() const { return dga.ok() && filtration.ok(); }
};

FibrationReport validate_fibration(const Fibration& fib, int cutoff);

// Subalgebra on the first `count` generators.
DGAlgebra prefix(const DGAlgebra& a, std::size_t count);

}  // namespace sullivan
