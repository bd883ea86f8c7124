#pragma once

// Theorem-level harnesses over a truncated range of degrees: injectivity of
// the base-to-total map, the power argument over an odd sphere, lifting a
// fibration to a minimal model of its base, the reduction to a single
// sphere, and an exhaustive search over small fibrations.

#include "sullivan/fibration.hpp"
#include "sullivan/minimal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sullivan {

struct KernelWitness {
  int degree = 0;
  Element base_class;  // cocycle of the base that dies
  Element preimage;    // theta in the total algebra with d theta = base_class
};

struct InjectivityReport {
  int n_half = 0;
  int probe_cutoff = 0;
  std::vector<std::size_t> kernel_dimensions;  // index i, 0 <= i < 2N
  std::size_t kernel_at_2n = 0;                // reported, not asserted
  std::vector<KernelWitness> witnesses;
  ProbeVerdict fiber;
  std::optional<int> even_class_degree;  // set when H^{2k}(base) != 0 for some 0 < 2k <= 2N

  [[nodiscard]] bool injective() const;
  // Injective, or the fiber shows cohomology up to the probe cutoff.
  [[nodiscard]] bool consistent() const { return injective() || !fiber.finite(); }
};

InjectivityReport injectivity_check(const Fibration& fib, int n_half, int probe_cutoff, int margin = 2);

struct SphereEngineReport {
  enum class Outcome {
    TrivialCase,     // |x| = 1
    Injective,       // x is not exact in the total algebra
    NoExactPower,    // v found, [v^n] != 0 in the fiber for every n checked
    ExactPowerFound  // some [v^n] = 0; the replay then shows [v^{n-1}] = 0
  };
  Outcome outcome = Outcome::Injective;
  int cutoff = 0;
  int power_bound = 0;
  std::optional<Element> v;               // in the total algebra, dv = x
  std::vector<int> nonzero_powers;        // n with [v^n] != 0 in the fiber
  std::optional<int> exact_power;         // least n with [v^n] = 0
  std::optional<Element> replay_preimage; // u0 / n in the fiber with d u0/n = v^{n-1}
  std::vector<int> fiber_even_nonzero;    // even degrees 2..cutoff with nonzero fiber cohomology
  bool all_even_nonzero = false;
  std::vector<std::string> trace;
};

std::string_view to_string(SphereEngineReport::Outcome o);

// Fibration over Λ(x) with x odd and dx = 0. power_bound 0 means cutoff / |v|.
SphereEngineReport sphere_engine(const Fibration& fib, int cutoff, int power_bound = 0);

struct LiftResult {
  Fibration lifted;   // over the minimal model
  Morphism g;         // lifted total -> original total
  bool commutes = false;
  std::vector<DegreeIso> g_iso;  // through N

  [[nodiscard]] bool ok() const;
};

// Fiber generators are processed in (stage, id) order. Throws InvalidInput
// when mm has no target map or a differential cannot be lifted.
LiftResult lift_fibration(const Fibration& fib, const MinimalModel& mm, int n_half);

struct PipelineReport {
  enum class Verdict { Refuted, Certified };
  Verdict verdict = Verdict::Refuted;
  int n_half = 0;
  int cutoff = 0;
  SparseVector image_coordinates;   // of iota*(alpha) when it survives
  std::optional<Element> alpha_model;  // class in the minimal model mapping to alpha
  std::string representing_generator;
  bool tau_kills_eta = false;
  std::optional<SphereEngineReport> engine;
  std::vector<std::string> trace;
};

std::string_view to_string(PipelineReport::Verdict v);

PipelineReport theorem_b_pipeline(const Fibration& fib, const CohomologyClass& alpha, int n_half);

struct SearchSpace {
  DGAlgebra base;
  std::vector<int> fiber_degrees;  // allowed degrees
  int max_generators = 1;
  int coefficient_range = 1;       // coefficients in [-r, r]
  int cutoff = 12;
  int margin = 2;
  std::size_t enumeration_cap = 2'000'000;
};

struct SearchHit {
  std::size_t index = 0;  // enumeration index
  Fibration fibration;
  ProbeVerdict fiber;
};

struct SearchReport {
  std::size_t enumerated = 0;
  std::size_t valid = 0;   // d^2 = 0
  std::vector<SearchHit> hits;
  std::size_t finite_hits = 0;  // hits with a FiniteUpTo verdict
};

// Throws ResourceBound when the enumeration exceeds the cap.
SearchReport search_killing_fibrations(const SearchSpace& space, const CohomologyClass& target,
                                       unsigned threads = 1);

// The same fibration with fiber generators sorted by (stage, id).
Fibration sorted_by_stage(const Fibration& fib);

}  // namespace sullivan
