#pragma once

// Per-degree cochain linear algebra for a DGAlgebra: monomial bases,
// matrices of d, cocycles, coboundaries and cohomology representatives.
//
// Representatives are canonical: the cocycle space is reduced modulo the
// reduced row echelon form of the coboundaries, and the result is itself put
// in reduced row echelon form. Pivots fall on the smallest monomials in the
// basis order.

#include "sullivan/algebra.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sullivan {

struct DegreeBasis {
  int degree = 0;
  std::vector<Monomial> monomials;  // sorted
  std::map<Monomial, std::size_t> index;

  [[nodiscard]] std::size_t size() const { return monomials.size(); }
  // Throws InvalidInput if e has a monomial outside this degree.
  [[nodiscard]] SparseVector coordinates(const Element& e) const;
  [[nodiscard]] Element element(const SparseVector& v) const;
};

struct CohomologyClass {
  int degree = 0;
  Element representative;
};

struct CohomologyBasis {
  int degree = 0;
  std::vector<Element> representatives;

  [[nodiscard]] std::size_t dimension() const { return representatives.size(); }
};

// Caches per-degree data for one algebra. Not safe for concurrent use; make
// one instance per thread.
class Cochains {
 public:
  explicit Cochains(DGAlgebra algebra);

  [[nodiscard]] const DGAlgebra& algebra() const { return algebra_; }

  const DegreeBasis& basis(int n);
  const SparseMatrix& differential(int n);  // d: B^n -> B^{n+1}
  const CohomologyBasis& cohomology(int n);
  std::size_t betti(int n) { return cohomology(n).dimension(); }
  std::vector<std::size_t> betti_vector(int max);

  bool is_cocycle(const Element& z);
  // Some theta with d theta = z; nullopt when z is not exact. Throws
  // InvalidInput if z is not a homogeneous cocycle of degree n.
  std::optional<Element> preimage(const Element& z, int n);
  std::optional<Element> preimage(const Element& z);
  bool is_exact(const Element& z, int n) { return preimage(z, n).has_value(); }
  // Coordinates of [z] in cohomology(n).
  SparseVector class_coordinates(const Element& z, int n);
  SparseVector class_coordinates(const Element& z);
  Element class_element(const SparseVector& coords, int n);  // sum of representatives

 private:
  struct Degree {
    std::optional<DegreeBasis> basis;
    std::optional<SparseMatrix> differential;
    std::optional<ColumnReduction> reduction;  // of differential
    std::optional<Echelon> harmonic;           // canonical complement of coboundaries in cocycles
    std::optional<CohomologyBasis> cohomology;
  };

  Degree& slot(int n);
  const ColumnReduction& reduction(int n);
  const Echelon& coboundaries(int n);
  const Echelon& harmonic(int n);
  SparseVector cocycle_coordinates(const Element& z, int n);

  DGAlgebra algebra_;
  std::map<int, Degree> degrees_;
};

DegreeBasis basis_of_degree(const DGAlgebra& a, int n);
SparseMatrix differential_matrix(const DGAlgebra& a, int n);

// b_0..b_max. Throws InvalidInput if validate(a, max + 1) fails. With
// threads > 1 the per-degree ranks are computed concurrently.
std::vector<std::size_t> betti(const DGAlgebra& a, int max, unsigned threads = 1);
CohomologyBasis cohomology_basis(const DGAlgebra& a, int n);
std::optional<Element> is_exact(const DGAlgebra& a, const Element& z);
SparseVector class_coordinates(const DGAlgebra& a, const Element& z);

// Matrix of the map induced by f on H^n, in the canonical bases on both sides.
SparseMatrix induced_map(const Morphism& f, Cochains& source, Cochains& target, int n);

}  // namespace sullivan
