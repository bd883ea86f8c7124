#include "sullivan/fibration.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>

namespace sullivan {

namespace {

// Sends generators of `from` to the generator of the same name in `to`, or
// to zero when `to` has no such generator.
Morphism by_name(const DGAlgebra& from, const DGAlgebra& to) {
  std::vector<Element> images;
  images.reserve(from.size());
  for (const auto& g : from.generators()) {
    auto id = to.find(g.name);
    images.push_back(id ? to.gen(*id) : Element{});
  }
  return Morphism(from, to, std::move(images));
}

SparseMatrix class_map(Cochains& src, int n, Cochains& tgt, int m,
                       const std::function<Element(const Element&)>& f) {
  std::size_t rows = m >= 0 ? tgt.betti(m) : 0;
  std::vector<SparseVector> cols;
  if (n >= 0)
    for (const auto& rep : src.cohomology(n).representatives)
      cols.push_back(m >= 0 ? tgt.class_coordinates(f(rep), m) : SparseVector{});
  return SparseMatrix(rows, std::move(cols));
}

// Exactness of U -a-> V -b-> W at V.
bool exact_at(const SparseMatrix& a, const SparseMatrix& b, std::size_t dim_v) {
  if (!b.compose(a).is_zero()) return false;
  return rank(a) + rank(b) == dim_v;
}

std::string hb(int n, const char* space) {
  return "H^" + std::to_string(n) + "(" + space + ")";
}

}  // namespace

Fibration::Fibration(DGAlgebra base, DGAlgebra total, std::vector<int> stages)
    : base_(std::move(base)), total_(std::move(total)), stages_(std::move(stages)) {
  if (total_.size() < base_.size() || stages_.size() != total_.size() - base_.size())
    throw InvalidInput("fibration: total algebra must extend the base by one generator per stage");
  for (const auto& g : base_.generators()) {
    const Generator& t = total_.generator(g.id);
    if (t.name != g.name || t.degree != g.degree || total_.differential(g.id) != base_.differential(g.id))
      throw InvalidInput("fibration: base generator '" + g.name + "' differs in the total algebra");
  }
  for (int s : stages_)
    if (s < 0) throw InvalidInput("fibration: negative stage");
}

Fibration Fibration::trivial(DGAlgebra base) {
  DGAlgebra total = base;
  return Fibration(std::move(base), std::move(total), {});
}

int Fibration::stage_of(GeneratorId total_id) const {
  if (total_id >= total_.size()) throw InvalidInput("fibration: unknown generator id");
  return is_fiber(total_id) ? stages_[total_id - base_size()] : -1;
}

std::vector<GeneratorId> Fibration::fiber_generators() const {
  std::vector<GeneratorId> ids;
  for (GeneratorId g = base_size(); g < total_.size(); ++g) ids.push_back(g);
  return ids;
}

Fibration Fibration::with_fiber_generator(const std::string& name, int degree,
                                          const Element& differential, int stage) const {
  DGAlgebra total = total_;
  GeneratorId id = total.add_generator(name, degree);
  total.set_differential(id, differential);
  std::vector<int> stages = stages_;
  stages.push_back(stage);
  return Fibration(base_, std::move(total), std::move(stages));
}

Morphism Fibration::inclusion() const {
  std::vector<Element> images;
  for (GeneratorId g = 0; g < base_size(); ++g) images.push_back(total_.gen(g));
  return Morphism(base_, total_, std::move(images));
}

DGAlgebra prefix(const DGAlgebra& a, std::size_t count) {
  if (count > a.size()) throw InvalidInput("prefix: not enough generators");
  DGAlgebra out;
  for (std::size_t g = 0; g < count; ++g) out.add_generator(a.generator(g).name, a.generator(g).degree);
  for (std::size_t g = 0; g < count; ++g) out.set_differential(g, a.differential(g));
  return out;
}

Attachment attach_odd_sphere(const DGAlgebra& base, const CohomologyClass& beta,
                             const std::string& name) {
  if (beta.degree <= 0 || beta.degree % 2 != 0)
    throw InvalidInput("attach: Euler class must have positive even degree, got " +
                       std::to_string(beta.degree));
  base.check_member(beta.representative);
  if (!base.is_homogeneous(beta.representative, beta.degree))
    throw InvalidInput("attach: representative is not of degree " + std::to_string(beta.degree));
  if (!base.d(beta.representative).is_zero())
    throw InvalidInput("attach: representative is not a cocycle");
  Fibration fib = Fibration::trivial(base).with_fiber_generator(name, beta.degree - 1,
                                                                beta.representative, 0);
  GeneratorId x = fib.total().size() - 1;
  return {std::move(fib), {x, beta}};
}

bool GysinReport::ok() const {
  return first_failure() == nullptr &&
         std::all_of(kernel_law.begin(), kernel_law.end(), [](const KernelLaw& k) { return k.equal; });
}

const GysinNode* GysinReport::first_failure() const {
  for (const auto& n : nodes)
    if (!n.exact) return &n;
  return nullptr;
}

GysinReport gysin_verify(const Fibration& fib, int cutoff) {
  if (fib.fiber_size() != 1) throw InvalidInput("gysin: expected a single attached generator");
  const GeneratorId x = fib.base_size();
  const Generator& gx = fib.total().generator(x);
  if (!gx.odd()) throw InvalidInput("gysin: attached generator must have odd degree");
  if (fib.total().differential(x).mentions(x))
    throw InvalidInput("gysin: d of the attached generator must lie in the base");
  const int k2 = gx.degree + 1;
  const Element e = fib.total().differential(x);

  Cochains base(fib.base());
  Cochains total(fib.total());
  const DGAlgebra& B = fib.base();

  auto cup = [&](int i) {
    return class_map(base, i, base, i + k2, [&](const Element& r) { return B.multiply(r, e); });
  };
  auto phi = [&](int j) {
    return class_map(base, j, total, j, [](const Element& r) { return r; });
  };
  auto boundary = [&](int j) {
    return class_map(total, j, base, j - k2 + 1, [&](const Element& z) {
      Element::Terms b1;
      for (const auto& [m, c] : z.terms()) {
        if (m.exponent_of(x) == 0) continue;
        std::vector<Factor> rest(m.factors().begin(), m.factors().end() - 1);
        b1.emplace(Monomial::from_canonical(std::move(rest)), c);
      }
      return Element::from_terms(std::move(b1));
    });
  };
  auto dim_b = [&](int n) -> std::size_t { return n >= 0 ? base.betti(n) : 0; };

  GysinReport report;
  report.euler_degree = k2;
  report.cutoff = cutoff;
  for (int j = 0; j <= cutoff; ++j) {
    SparseMatrix in_b = cup(j - k2), p = phi(j), del = boundary(j);
    report.nodes.push_back({hb(j, "B"), j, exact_at(in_b, p, dim_b(j))});
    report.nodes.push_back({hb(j, "E"), j, exact_at(p, del, total.betti(j))});
    int i = j - k2 + 1;
    if (i >= 0)
      report.nodes.push_back({hb(i, "B") + " after boundary from degree " + std::to_string(j), i,
                              exact_at(del, cup(i), dim_b(i))});
  }
  for (int i = 0; i + k2 <= cutoff; ++i) {
    ColumnReduction ker = reduce_columns(phi(i + k2));
    SparseMatrix c = cup(i);
    KernelLaw law;
    law.i = i;
    law.kernel_dimension = ker.kernel.rank();
    law.cup_image_dimension = rank(c);
    law.equal = same_span(ker.kernel.rows, c.columns());
    report.kernel_law.push_back(law);
  }
  return report;
}

namespace {

KillStage kill_even(Cochains& c, int cutoff, int stage) {
  const DGAlgebra& current = c.algebra();
  DGAlgebra total = current;
  KillStage out{Fibration::trivial(current), {}, {}};
  std::vector<int> stages;
  for (int k2 = 2; k2 <= cutoff; k2 += 2) {
    const auto& reps = c.cohomology(k2).representatives;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::string name = "s" + std::to_string(stage) + "_" + std::to_string(k2) + "_" + std::to_string(i);
      out.new_generators.push_back(total.add_generator(name, k2 - 1, reps[i]));
      out.killed.push_back({k2, reps[i]});
      stages.push_back(0);
    }
  }
  out.fibration = Fibration(current, std::move(total), std::move(stages));
  return out;
}

bool killed_are_exact(Cochains& total, const std::vector<CohomologyClass>& killed) {
  for (const auto& k : killed)
    if (!total.is_exact(k.representative, k.degree)) return false;
  return true;
}

void require_valid(const DGAlgebra& a, int cutoff) {
  ValidationReport r = validate(a, cutoff);
  if (!r.ok()) throw InvalidInput("invalid algebra: " + r.first()->detail);
}

}  // namespace

KillStage kill_even_stage(const DGAlgebra& current, int cutoff, int stage) {
  require_valid(current, cutoff + 1);
  Cochains c(current);
  return kill_even(c, cutoff, stage);
}

bool zero_map_holds(const KillStage& s) {
  Cochains total(s.fibration.total());
  return killed_are_exact(total, s.killed);
}

int Tower::stage_of(GeneratorId g) const {
  for (std::size_t m = 0; m < stages.size(); ++m) {
    const auto& ids = stages[m].new_generators;
    if (std::find(ids.begin(), ids.end(), g) != ids.end()) return static_cast<int>(m + 1);
  }
  if (g < base.size()) return 0;
  throw InvalidInput("tower: unknown generator id");
}

Fibration Tower::as_fibration() const {
  std::vector<int> st;
  for (GeneratorId g = base.size(); g < last().size(); ++g) st.push_back(stage_of(g) - 1);
  return Fibration(base, last(), std::move(st));
}

std::vector<std::pair<int, std::size_t>> Tower::residual_even_betti() const {
  std::vector<std::pair<int, std::size_t>> out;
  for (std::size_t n = 2; n < final_betti.size(); n += 2)
    if (final_betti[n] != 0) out.emplace_back(static_cast<int>(n), final_betti[n]);
  return out;
}

Tower build_tower(const DGAlgebra& a0, int cutoff, int max_stages) {
  require_valid(a0, cutoff + 1);
  Tower t;
  t.base = a0;
  t.cutoff = cutoff;
  auto current = std::make_unique<Cochains>(a0);
  for (int m = 1;; ++m) {
    bool even_free = true;
    for (int k2 = 2; k2 <= cutoff && even_free; k2 += 2) even_free = current->betti(k2) == 0;
    if (even_free) {
      t.converged = true;
      break;
    }
    if (m > max_stages) break;
    KillStage s = kill_even(*current, cutoff, m);
    auto next = std::make_unique<Cochains>(s.fibration.total());
    TowerStage ts{s.fibration.total(), s.new_generators, s.killed, killed_are_exact(*next, s.killed)};
    t.stages.push_back(std::move(ts));
    current = std::move(next);
  }
  t.final_betti = current->betti_vector(cutoff);
  return t;
}

Fibration restrict_fiber(const Fibration& fib, std::vector<GeneratorId> keep) {
  const DGAlgebra& total = fib.total();
  std::set<GeneratorId> closed;
  while (!keep.empty()) {
    GeneratorId g = keep.back();
    keep.pop_back();
    if (!fib.is_fiber(g) || !closed.insert(g).second) continue;
    for (const auto& [m, c] : total.differential(g).terms())
      for (const auto& f : m.factors())
        if (fib.is_fiber(f.generator)) keep.push_back(f.generator);
  }
  DGAlgebra out = fib.base();
  std::vector<int> stages;
  for (GeneratorId g : closed) {
    out.add_generator(total.generator(g).name, total.generator(g).degree);
    stages.push_back(fib.stage_of(g));
  }
  Morphism rename = by_name(total, out);
  for (GeneratorId g : closed)
    out.set_differential(out.id_of(total.generator(g).name), rename.apply(total.differential(g)));
  return Fibration(fib.base(), std::move(out), std::move(stages));
}

Subtower finite_subtower(const Tower& t, const CohomologyClass& alpha) {
  const DGAlgebra& a0 = t.base;
  a0.check_member(alpha.representative);
  if (!a0.is_homogeneous(alpha.representative, alpha.degree))
    throw InvalidInput("subtower: class representative is not homogeneous of its degree");

  Cochains prev(a0);
  if (auto theta = prev.preimage(alpha.representative, alpha.degree))
    return {Fibration::trivial(a0), 0, *theta, {}};

  for (std::size_t m = 0; m < t.stages.size(); ++m) {
    const TowerStage& st = t.stages[m];
    Cochains cur(st.algebra);
    auto found = cur.preimage(alpha.representative, alpha.degree);
    if (!found) {
      prev = std::move(cur);
      continue;
    }
    Element theta = *found;
    // An even class is killed directly: express it in the basis the stage
    // attached generators for and use those generators.
    if (alpha.degree % 2 == 0) {
      SparseVector coords = prev.class_coordinates(alpha.representative, alpha.degree);
      Element direct;
      Element rest = alpha.representative;
      std::size_t index = 0;
      for (std::size_t j = 0; j < st.killed.size(); ++j) {
        if (st.killed[j].degree != alpha.degree) continue;
        Rational c = coords.at(index++);
        if (c == 0) continue;
        direct = direct + st.algebra.gen(st.new_generators[j]) * c;
        rest = rest - st.killed[j].representative * c;
      }
      if (auto tail = prev.preimage(rest, alpha.degree)) theta = direct + *tail;
    }
    Fibration whole = t.as_fibration();
    std::vector<GeneratorId> support;
    for (const auto& [mono, c] : theta.terms())
      for (const auto& f : mono.factors())
        if (whole.is_fiber(f.generator)) support.push_back(f.generator);
    Fibration sub = restrict_fiber(whole, support);
    Subtower out{sub, static_cast<int>(m + 1), by_name(st.algebra, sub.total()).apply(theta), {}};
    for (GeneratorId g : sub.fiber_generators()) out.generators.push_back(sub.total().generator(g).name);
    return out;
  }
  throw InvalidInput("subtower: class does not die within the recorded stages");
}

DGAlgebra algebraic_fiber(const Fibration& fib) {
  const DGAlgebra& total = fib.total();
  DGAlgebra out;
  for (GeneratorId g : fib.fiber_generators())
    out.add_generator(total.generator(g).name, total.generator(g).degree);
  std::vector<Element> images;
  for (const auto& g : total.generators())
    images.push_back(fib.is_fiber(g.id) ? out.gen(g.id - fib.base_size()) : Element{});
  Morphism project(total, out, std::move(images));
  for (GeneratorId g : fib.fiber_generators())
    out.set_differential(g - fib.base_size(), project.apply(total.differential(g)));
  return out;
}

std::string_view to_string(ProbeVerdict::Kind k) {
  return k == ProbeVerdict::Kind::FiniteUpTo ? "FiniteUpTo" : "NonzeroNearCutoff";
}

ProbeVerdict probe_cohomology(const DGAlgebra& a, int cutoff, int margin) {
  ProbeVerdict v;
  v.cutoff = cutoff;
  v.margin = margin;
  v.betti = betti(a, cutoff);
  for (int n = 0; n <= cutoff; ++n)
    if (v.betti[n] != 0) {
      v.top_degree = n;
      if (n > 0) v.nonzero_degrees.push_back(n);
    }
  v.kind = v.top_degree <= cutoff - margin ? ProbeVerdict::Kind::FiniteUpTo
                                           : ProbeVerdict::Kind::NonzeroNearCutoff;
  return v;
}

ProbeVerdict fiber_dimension_probe(const Fibration& fib, int cutoff, int margin) {
  return probe_cohomology(algebraic_fiber(fib), cutoff, margin);
}

Fibration pushforward(const Fibration& fib, const Morphism& psi) {
  if (!(psi.source() == fib.base())) throw InvalidInput("pushforward: morphism source is not the base");
  ValidationReport r = validate_morphism(psi, INT_MAX);
  if (!r.ok()) throw InvalidInput("pushforward: " + r.first()->detail);
  const DGAlgebra& total = fib.total();
  DGAlgebra out = psi.target();
  const std::size_t offset = out.size();
  for (GeneratorId g : fib.fiber_generators())
    out.add_generator(total.generator(g).name, total.generator(g).degree);
  std::vector<Element> images;
  for (const auto& g : total.generators())
    images.push_back(fib.is_fiber(g.id) ? out.gen(offset + g.id - fib.base_size()) : psi.image(g.id));
  Morphism push(total, out, std::move(images));
  for (GeneratorId g : fib.fiber_generators())
    out.set_differential(offset + g - fib.base_size(), push.apply(total.differential(g)));
  return Fibration(psi.target(), std::move(out), fib.stages());
}

FibrationReport validate_fibration(const Fibration& fib, int cutoff) {
  FibrationReport r;
  const DGAlgebra& total = fib.total();
  r.dga = validate(total, cutoff);
  for (GeneratorId g : fib.fiber_generators()) {
    const Generator& gen = total.generator(g);
    const int s = fib.stage_of(g);
    bool filtered = true, linear = false;
    for (const auto& [m, c] : total.differential(g).terms()) {
      bool has_base = false;
      unsigned fiber_length = 0;
      for (const auto& f : m.factors()) {
        if (!fib.is_fiber(f.generator)) {
          has_base = true;
          continue;
        }
        fiber_length += f.exponent;
        if (fib.stage_of(f.generator) >= s) filtered = false;
      }
      if (!has_base && fiber_length == 1) linear = true;
    }
    if (!filtered)
      r.filtration.violations.push_back(
          {Violation::Kind::Filtration, g, gen.name,
           "d " + gen.name + " uses fiber generators of stage >= " + std::to_string(s)});
    if (linear) {
      r.minimal = false;
      r.non_minimal.push_back(gen.name);
    }
  }
  return r;
}

}  // namespace sullivan
