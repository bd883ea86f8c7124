#include "fixtures.hpp"

#include "sullivan/cohomology.hpp"

namespace fixtures {

using namespace sullivan;

Element random_element(const DGAlgebra& a, int n, std::mt19937& rng, int max_terms) {
  DegreeBasis b = basis_of_degree(a, n);
  if (b.size() == 0) return {};
  std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
  std::uniform_int_distribution<int> count(1, max_terms);
  Element e;
  for (int i = count(rng); i > 0; --i) e = e + Element::term(b.monomials[pick(rng)], random_rational(rng));
  return e;
}

Element random_cocycle(const DGAlgebra& a, int n, std::mt19937& rng) {
  Cochains c(a);
  const ColumnReduction r = reduce_columns(c.differential(n));
  Element z;
  for (const auto& row : r.kernel.rows)
    if (rng() % 2) z = z + c.basis(n).element(row) * random_rational(rng);
  return z;
}

DGAlgebra random_dga(std::mt19937& rng, int generators, int max_degree, bool allow_degree_one) {
  DGAlgebra a;
  std::uniform_int_distribution<int> deg(allow_degree_one ? 1 : 2, max_degree);
  for (int i = 0; i < generators; ++i) {
    int k = deg(rng);
    Element dz = random_cocycle(a, k + 1, rng);
    a.add_generator("g" + std::to_string(i), k, dz);
  }
  return a;
}

}  // namespace fixtures
