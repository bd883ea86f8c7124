#pragma once

// Free graded-commutative algebras over Q with a differential defined on
// generators. Monomials are kept in canonical form: factors sorted by
// generator creation order, odd generators appearing at most once.

#include "sullivan/linalg.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sullivan {

// Raised for malformed input: unknown generators, degree violations,
// elements from a different algebra. Maps to exit code 2 in the CLI.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a bounded computation hits its configured limit.
class ResourceBound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using GeneratorId = std::size_t;

struct Generator {
  GeneratorId id = 0;
  std::string name;
  int degree = 1;

  [[nodiscard]] bool odd() const { return degree % 2 != 0; }
  bool operator==(const Generator&) const = default;
};

struct Factor {
  GeneratorId generator = 0;
  unsigned exponent = 1;

  auto operator<=>(const Factor&) const = default;
};

class Monomial {
 public:
  Monomial() = default;  // the unit
  static Monomial of(GeneratorId g, unsigned exponent = 1);
  // Caller guarantees ids strictly increasing and exponents >= 1.
  static Monomial from_canonical(std::vector<Factor> factors);

  [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
  [[nodiscard]] bool is_unit() const { return factors_.empty(); }
  [[nodiscard]] unsigned length() const;  // word length (sum of exponents)
  [[nodiscard]] unsigned exponent_of(GeneratorId g) const;
  [[nodiscard]] GeneratorId max_generator() const;  // precondition: not unit

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Factor> factors_;
};

class Element {
 public:
  using Terms = std::map<Monomial, Rational>;

  Element() = default;
  explicit Element(Rational scalar);
  static Element term(Monomial m, Rational coefficient = 1);
  static Element from_terms(Terms terms);  // drops zero coefficients

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Rational coefficient(const Monomial& m) const;
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool mentions(GeneratorId g) const;

  Element operator+(const Element& other) const;
  Element operator-(const Element& other) const;
  Element operator-() const;
  Element operator*(const Rational& scalar) const;

  bool operator==(const Element&) const = default;

 private:
  Terms terms_;
};

struct Normalized {
  int sign = 1;  // 0 when the product vanishes (repeated odd generator)
  Monomial monomial;
};

class DGAlgebra {
 public:
  DGAlgebra() = default;

  // Zero differential unless one is given. Throws InvalidInput on degree < 1
  // or a duplicate name.
  GeneratorId add_generator(std::string name, int degree, Element differential = {});
  void set_differential(GeneratorId g, Element differential);

  [[nodiscard]] std::size_t size() const { return generators_.size(); }
  [[nodiscard]] const std::vector<Generator>& generators() const { return generators_; }
  [[nodiscard]] const Generator& generator(GeneratorId g) const;
  [[nodiscard]] const Element& differential(GeneratorId g) const;
  [[nodiscard]] std::optional<GeneratorId> find(std::string_view name) const;
  [[nodiscard]] GeneratorId id_of(std::string_view name) const;  // throws InvalidInput
  [[nodiscard]] Element gen(GeneratorId g) const;
  [[nodiscard]] Element gen(std::string_view name) const;
  [[nodiscard]] int max_degree() const;

  [[nodiscard]] int degree(const Monomial& m) const;
  // Degree if e is nonzero and homogeneous.
  [[nodiscard]] std::optional<int> degree(const Element& e) const;
  [[nodiscard]] bool is_homogeneous(const Element& e, int n) const;  // zero counts

  [[nodiscard]] Normalized normalize(std::span<const Factor> factors) const;
  [[nodiscard]] Element multiply(const Element& a, const Element& b) const;
  [[nodiscard]] Element power(const Element& a, unsigned n) const;
  // Graded Leibniz extension of the differential.
  [[nodiscard]] Element d(const Element& e) const;

  // Throws InvalidInput when e references generators outside this algebra.
  void check_member(const Element& e) const;

  bool operator==(const DGAlgebra& other) const {
    return generators_ == other.generators_ && differentials_ == other.differentials_;
  }

 private:
  [[nodiscard]] Element d_monomial(const Monomial& m) const;

  std::vector<Generator> generators_;
  std::vector<Element> differentials_;
  std::unordered_map<std::string, GeneratorId> by_name_;
};

// A degree-preserving multiplicative map given by generator images.
class Morphism {
 public:
  Morphism(DGAlgebra source, DGAlgebra target, std::vector<Element> images);
  static Morphism identity(const DGAlgebra& a);
  // Sends each source generator to the target generator of the same name.
  static Morphism inclusion(const DGAlgebra& sub, const DGAlgebra& total);

  [[nodiscard]] const DGAlgebra& source() const { return *source_; }
  [[nodiscard]] const DGAlgebra& target() const { return *target_; }
  [[nodiscard]] const std::vector<Element>& images() const { return images_; }
  [[nodiscard]] const Element& image(GeneratorId g) const { return images_.at(g); }

  [[nodiscard]] Element apply(const Element& e) const;
  [[nodiscard]] Morphism then(const Morphism& next) const;  // next ∘ this

 private:
  std::shared_ptr<const DGAlgebra> source_;
  std::shared_ptr<const DGAlgebra> target_;
  std::vector<Element> images_;
};

// Map onto the ground field: every generator goes to zero.
Morphism augmentation(const DGAlgebra& a);

struct Violation {
  enum class Kind { DegreeMismatch, DSquaredNonzero, NotChainMap, Filtration };
  Kind kind;
  GeneratorId generator;
  std::string name;
  std::string detail;
};

std::string_view to_string(Violation::Kind k);

struct ValidationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] const Violation* first() const {
    return violations.empty() ? nullptr : &violations.front();
  }
};

// Homogeneity of d(g) and d(d(g)) = 0 for every generator of degree <= cutoff.
ValidationReport validate(const DGAlgebra& a, int cutoff);
// Degree preservation and f(dg) = d f(g) for source generators of degree <= cutoff.
ValidationReport validate_morphism(const Morphism& f, int cutoff);

// Human readable form, e.g. "a^2 - 1/2*x*b".
std::string to_string(const DGAlgebra& a, const Element& e);
std::string to_string(const DGAlgebra& a, const Monomial& m);
std::string to_string(const Rational& q);

// The same algebra with generators re-created in the order given by
// `order` (a permutation of ids). Names are kept.
DGAlgebra reorder(const DGAlgebra& a, std::span<const GeneratorId> order);
// Rewrites an element of `from` into `to`, matching generators by name.
Element transport(const DGAlgebra& from, const Element& e, const DGAlgebra& to);

}  // namespace sullivan
