#pragma once

#include "sullivan/algebra.hpp"

#include <random>

namespace fixtures {

using sullivan::DGAlgebra;
using sullivan::Element;
using sullivan::Rational;

// Λ(a2, b3; db = a^2), the rational 2-sphere.
inline DGAlgebra s2() {
  DGAlgebra a;
  auto ga = a.add_generator("a", 2);
  a.add_generator("b", 3, a.power(a.gen(ga), 2));
  return a;
}

// Λ(a2, b5; db = a^3), the rational complex projective plane.
inline DGAlgebra cp2() {
  DGAlgebra a;
  auto ga = a.add_generator("a", 2);
  a.add_generator("b", 5, a.power(a.gen(ga), 3));
  return a;
}

// Λ(a2, b3, x1; db = a^2, dx = a), the total space of the rational Hopf fibration.
inline DGAlgebra hopf() {
  DGAlgebra a = s2();
  a.add_generator("x", 1, a.gen("a"));
  return a;
}

inline DGAlgebra sphere(int degree, const std::string& name = "x") {
  DGAlgebra a;
  a.add_generator(name, degree);
  return a;
}

// Random cocycle of degree n, or zero when there is none.
Element random_cocycle(const DGAlgebra& a, int n, std::mt19937& rng);

// Random valid DGA: generators of degree 1..max_degree added in sequence,
// each with differential a random cocycle of the algebra built so far.
DGAlgebra random_dga(std::mt19937& rng, int generators, int max_degree, bool allow_degree_one = true);

// Random homogeneous element of degree n (possibly zero).
Element random_element(const DGAlgebra& a, int n, std::mt19937& rng, int max_terms = 4);

inline Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace fixtures
