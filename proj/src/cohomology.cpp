#include "sullivan/cohomology.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace sullivan {

namespace {

void enumerate(const DGAlgebra& a, std::size_t next, int remaining, std::vector<Factor>& acc,
               std::vector<Monomial>& out) {
  if (remaining == 0) {
    out.push_back(Monomial::from_canonical(acc));
    return;
  }
  for (std::size_t g = next; g < a.size(); ++g) {
    const Generator& gen = a.generator(g);
    if (gen.degree > remaining) continue;
    unsigned max_exp = gen.odd() ? 1u : static_cast<unsigned>(remaining / gen.degree);
    for (unsigned e = 1; e <= max_exp; ++e) {
      acc.push_back({g, e});
      enumerate(a, g + 1, remaining - gen.degree * static_cast<int>(e), acc, out);
      acc.pop_back();
    }
  }
}

}  // namespace

SparseVector DegreeBasis::coordinates(const Element& e) const {
  std::vector<SparseVector::Entry> entries;
  entries.reserve(e.size());
  for (const auto& [m, c] : e.terms()) {
    auto it = index.find(m);
    if (it == index.end())
      throw InvalidInput("element is not homogeneous of degree " + std::to_string(degree));
    entries.emplace_back(it->second, c);
  }
  return SparseVector(std::move(entries));
}

Element DegreeBasis::element(const SparseVector& v) const {
  Element::Terms terms;
  for (const auto& [i, c] : v.entries()) terms.emplace(monomials.at(i), c);
  return Element::from_terms(std::move(terms));
}

DegreeBasis basis_of_degree(const DGAlgebra& a, int n) {
  DegreeBasis b;
  b.degree = n;
  if (n < 0) return b;
  std::vector<Factor> acc;
  enumerate(a, 0, n, acc, b.monomials);
  std::sort(b.monomials.begin(), b.monomials.end());
  for (std::size_t i = 0; i < b.monomials.size(); ++i) b.index.emplace(b.monomials[i], i);
  return b;
}

namespace {

SparseMatrix build_differential(const DGAlgebra& a, const DegreeBasis& from, const DegreeBasis& to) {
  std::vector<SparseVector> cols;
  cols.reserve(from.size());
  for (const auto& m : from.monomials) cols.push_back(to.coordinates(a.d(Element::term(m))));
  return SparseMatrix(to.size(), std::move(cols));
}

}  // namespace

SparseMatrix differential_matrix(const DGAlgebra& a, int n) {
  return build_differential(a, basis_of_degree(a, n), basis_of_degree(a, n + 1));
}

Cochains::Cochains(DGAlgebra algebra) : algebra_(std::move(algebra)) {}

Cochains::Degree& Cochains::slot(int n) { return degrees_[n]; }

const DegreeBasis& Cochains::basis(int n) {
  Degree& s = slot(n);
  if (!s.basis) s.basis = basis_of_degree(algebra_, n);
  return *s.basis;
}

const SparseMatrix& Cochains::differential(int n) {
  Degree& s = slot(n);
  if (!s.differential) {
    const DegreeBasis& from = basis(n);
    const DegreeBasis& to = basis(n + 1);
    s.differential = build_differential(algebra_, from, to);
  }
  return *s.differential;
}

const ColumnReduction& Cochains::reduction(int n) {
  Degree& s = slot(n);
  if (!s.reduction) s.reduction = reduce_columns(differential(n));
  return *s.reduction;
}

const Echelon& Cochains::coboundaries(int n) {
  static const Echelon empty;
  if (n <= 0) return empty;
  return reduction(n - 1).image;
}

const Echelon& Cochains::harmonic(int n) {
  Degree& s = slot(n);
  if (!s.harmonic) {
    const Echelon& cocycles = reduction(n).kernel;
    const Echelon& bounds = coboundaries(n);
    std::vector<SparseVector> reduced;
    reduced.reserve(cocycles.rows.size());
    for (const auto& z : cocycles.rows) reduced.push_back(bounds.reduce(z));
    s.harmonic = row_reduce(reduced);
  }
  return *s.harmonic;
}

const CohomologyBasis& Cochains::cohomology(int n) {
  Degree& s = slot(n);
  if (!s.cohomology) {
    CohomologyBasis h;
    h.degree = n;
    if (n >= 0) {
      const Echelon& harm = harmonic(n);
      const DegreeBasis& b = basis(n);
      for (const auto& row : harm.rows) h.representatives.push_back(b.element(row));
    }
    s.cohomology = std::move(h);
  }
  return *s.cohomology;
}

std::vector<std::size_t> Cochains::betti_vector(int max) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= max; ++n) out.push_back(betti(n));
  return out;
}

bool Cochains::is_cocycle(const Element& z) {
  algebra_.check_member(z);
  return algebra_.d(z).is_zero();
}

SparseVector Cochains::cocycle_coordinates(const Element& z, int n) {
  algebra_.check_member(z);
  SparseVector v = basis(n).coordinates(z);
  if (!differential(n).apply(v).empty())
    throw InvalidInput("element " + to_string(algebra_, z) + " is not a cocycle");
  return v;
}

std::optional<Element> Cochains::preimage(const Element& z, int n) {
  SparseVector v = cocycle_coordinates(z, n);
  if (v.empty()) return Element{};
  if (n <= 0) return std::nullopt;
  auto x = reduction(n - 1).solve(v);
  if (!x) return std::nullopt;
  return basis(n - 1).element(*x);
}

std::optional<Element> Cochains::preimage(const Element& z) {
  auto n = algebra_.degree(z);
  if (!n) {
    if (z.is_zero()) return Element{};
    throw InvalidInput("element " + to_string(algebra_, z) + " is not homogeneous");
  }
  return preimage(z, *n);
}

SparseVector Cochains::class_coordinates(const Element& z, int n) {
  SparseVector v = cocycle_coordinates(z, n);
  SparseVector r = coboundaries(n).reduce(v);
  auto c = harmonic(n).coordinates(r);
  // r is a cocycle with zeros on coboundary pivots, hence in the harmonic span.
  return c ? *c : SparseVector{};
}

SparseVector Cochains::class_coordinates(const Element& z) {
  auto n = algebra_.degree(z);
  if (!n) {
    if (z.is_zero()) return {};
    throw InvalidInput("element " + to_string(algebra_, z) + " is not homogeneous");
  }
  return class_coordinates(z, *n);
}

Element Cochains::class_element(const SparseVector& coords, int n) {
  const auto& reps = cohomology(n).representatives;
  Element out;
  for (const auto& [i, c] : coords.entries()) out = out + reps.at(i) * c;
  return out;
}

namespace {

void require_valid(const DGAlgebra& a, int cutoff) {
  ValidationReport r = validate(a, cutoff);
  if (!r.ok()) throw InvalidInput("algebra fails validation: " + r.first()->detail);
}

}  // namespace

std::vector<std::size_t> betti(const DGAlgebra& a, int max, unsigned threads) {
  require_valid(a, max + 1);
  if (max < 0) return {};
  // rank of d_n for n = 0..max, and dim B^n
  std::vector<std::size_t> ranks(static_cast<std::size_t>(max) + 1);
  std::vector<std::size_t> dims(static_cast<std::size_t>(max) + 1);
  auto work = [&](int n) {
    DegreeBasis from = basis_of_degree(a, n);
    DegreeBasis to = basis_of_degree(a, n + 1);
    dims[static_cast<std::size_t>(n)] = from.size();
    ranks[static_cast<std::size_t>(n)] = rank(build_differential(a, from, to));
  };
  if (threads <= 1) {
    for (int n = 0; n <= max; ++n) work(n);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t) {
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (int n = static_cast<int>(t); n <= max; n += static_cast<int>(threads)) work(n);
      }));
    }
    for (auto& j : jobs) j.get();
  }
  std::vector<std::size_t> out;
  for (int n = 0; n <= max; ++n) {
    std::size_t prev = n > 0 ? ranks[static_cast<std::size_t>(n) - 1] : 0;
    out.push_back(dims[static_cast<std::size_t>(n)] - ranks[static_cast<std::size_t>(n)] - prev);
  }
  return out;
}

CohomologyBasis cohomology_basis(const DGAlgebra& a, int n) {
  require_valid(a, n + 1);
  Cochains c(a);
  return c.cohomology(n);
}

std::optional<Element> is_exact(const DGAlgebra& a, const Element& z) {
  Cochains c(a);
  return c.preimage(z);
}

SparseVector class_coordinates(const DGAlgebra& a, const Element& z) {
  Cochains c(a);
  return c.class_coordinates(z);
}

SparseMatrix induced_map(const Morphism& f, Cochains& source, Cochains& target, int n) {
  const auto& reps = source.cohomology(n).representatives;
  std::vector<SparseVector> cols;
  cols.reserve(reps.size());
  for (const auto& r : reps) cols.push_back(target.class_coordinates(f.apply(r), n));
  return SparseMatrix(target.betti(n), std::move(cols));
}

}  // namespace sullivan
