#include "sullivan/verify.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <future>
#include <numeric>

namespace sullivan {

namespace {

Morphism by_name(const DGAlgebra& from, const DGAlgebra& to) {
  std::vector<Element> images;
  images.reserve(from.size());
  for (const auto& g : from.generators()) {
    auto id = to.find(g.name);
    images.push_back(id ? to.gen(*id) : Element{});
  }
  return Morphism(from, to, std::move(images));
}

std::string fresh(const DGAlgebra& a, std::string name) {
  while (a.find(name)) name += "_";
  return name;
}

}  // namespace

bool InjectivityReport::injective() const {
  return std::all_of(kernel_dimensions.begin(), kernel_dimensions.end(),
                     [](std::size_t k) { return k == 0; });
}

InjectivityReport injectivity_check(const Fibration& fib, int n_half, int probe_cutoff, int margin) {
  if (n_half < 1) throw InvalidInput("injectivity: N must be positive");
  InjectivityReport r;
  r.n_half = n_half;
  r.probe_cutoff = probe_cutoff;
  FibrationReport fr = validate_fibration(fib, std::max(2 * n_half, probe_cutoff) + 1);
  if (!fr.ok())
    throw InvalidInput("injectivity: invalid fibration: " +
                       (fr.dga.ok() ? fr.filtration.first()->detail : fr.dga.first()->detail));
  r.even_class_degree = first_even_class(fib.base(), 2 * n_half);
  Cochains base(fib.base()), total(fib.total());
  Morphism iota = fib.inclusion();
  for (int i = 0; i <= 2 * n_half; ++i) {
    ColumnReduction red = reduce_columns(induced_map(iota, base, total, i));
    if (i == 2 * n_half) {
      r.kernel_at_2n = red.kernel.rank();
      break;
    }
    r.kernel_dimensions.push_back(red.kernel.rank());
    for (const auto& row : red.kernel.rows) {
      Element z = base.class_element(row, i);
      r.witnesses.push_back({i, z, *total.preimage(z, i)});
    }
  }
  r.fiber = fiber_dimension_probe(fib, probe_cutoff, margin);
  return r;
}

std::string_view to_string(SphereEngineReport::Outcome o) {
  switch (o) {
    case SphereEngineReport::Outcome::TrivialCase: return "trivial_case";
    case SphereEngineReport::Outcome::Injective: return "injective";
    case SphereEngineReport::Outcome::NoExactPower: return "no_exact_power";
    case SphereEngineReport::Outcome::ExactPowerFound: return "exact_power_found";
  }
  return "unknown";
}

SphereEngineReport sphere_engine(const Fibration& fib, int cutoff, int power_bound) {
  const DGAlgebra& base = fib.base();
  if (base.size() != 1 || !base.generator(0).odd() || !base.differential(0).is_zero())
    throw InvalidInput("sphere engine: base must be a single odd generator with zero differential");
  ValidationReport vr = validate(fib.total(), cutoff + 1);
  if (!vr.ok()) throw InvalidInput("sphere engine: invalid total algebra: " + vr.first()->detail);

  SphereEngineReport r;
  r.cutoff = cutoff;
  const DGAlgebra& total = fib.total();
  const int xdeg = base.generator(0).degree;
  const std::string& xname = base.generator(0).name;
  if (xdeg == 1) {
    r.outcome = SphereEngineReport::Outcome::TrivialCase;
    r.trace.push_back("|" + xname + "| = 1: trivial case");
    return r;
  }
  Cochains ct(total);
  auto v = ct.preimage(total.gen(0), xdeg);
  if (!v) {
    r.outcome = SphereEngineReport::Outcome::Injective;
    r.trace.push_back(xname + " is not exact in the total algebra");
    return r;
  }
  r.v = *v;
  const int vdeg = xdeg - 1;
  r.power_bound = power_bound > 0 ? power_bound : cutoff / vdeg;
  r.trace.push_back("d v = " + xname + " with v = " + to_string(total, *v));
  r.trace.push_back("v = v' + w*" + xname + " forces w = 0: |w| = -1");

  DGAlgebra fiber = algebraic_fiber(fib);
  Morphism project = by_name(total, fiber);
  Element vbar = project.apply(*v);
  Cochains cf(fiber);
  for (int n = 1; n <= r.power_bound; ++n) {
    Element p = fiber.power(vbar, n);
    if (!cf.is_exact(p, n * vdeg)) {
      r.nonzero_powers.push_back(n);
      continue;
    }
    r.exact_power = n;
    // Replay: d u = v^n + x u0, and 0 = d d u = n v^{n-1} x - x d u0.
    Element u = transport(fiber, *cf.preimage(p, n * vdeg), total);
    Element rest = total.d(u) - total.power(*v, n);
    Element::Terms u0;
    for (const auto& [m, c] : rest.terms()) {
      if (m.exponent_of(0) == 0) throw std::logic_error("sphere engine: x-free remainder in replay");
      u0.emplace(Monomial::from_canonical({m.factors().begin() + 1, m.factors().end()}), c);
    }
    Element theta = project.apply(Element::from_terms(std::move(u0))) * (Rational(1) / n);
    r.replay_preimage = theta;
    bool certified = fiber.d(theta) == fiber.power(vbar, n - 1);
    r.trace.push_back("[v^" + std::to_string(n) + "] = 0 in the fiber");
    r.trace.push_back(std::string("replay: d(u0/") + std::to_string(n) + ") = v^" + std::to_string(n - 1) +
                      (certified ? " holds" : " fails") + ", contradicting minimality of n");
    r.outcome = SphereEngineReport::Outcome::ExactPowerFound;
    break;
  }
  if (!r.exact_power) {
    r.outcome = SphereEngineReport::Outcome::NoExactPower;
    r.trace.push_back("no exact power v^n for n <= " + std::to_string(r.power_bound) +
                      ": fiber cohomology persists through degree " + std::to_string(cutoff));
  }
  std::vector<std::size_t> b = betti(fiber, cutoff);
  r.all_even_nonzero = true;
  for (int n = 2; n <= cutoff; n += 2) {
    if (b[n] != 0)
      r.fiber_even_nonzero.push_back(n);
    else
      r.all_even_nonzero = false;
  }
  return r;
}

Fibration sorted_by_stage(const Fibration& fib) {
  std::vector<GeneratorId> order = fib.fiber_generators();
  std::stable_sort(order.begin(), order.end(),
                   [&](GeneratorId a, GeneratorId b) { return fib.stage_of(a) < fib.stage_of(b); });
  const DGAlgebra& total = fib.total();
  DGAlgebra out = fib.base();
  std::vector<int> stages;
  for (GeneratorId g : order) {
    out.add_generator(total.generator(g).name, total.generator(g).degree);
    stages.push_back(fib.stage_of(g));
  }
  Morphism rename = by_name(total, out);
  for (GeneratorId g : order)
    out.set_differential(out.id_of(total.generator(g).name), rename.apply(total.differential(g)));
  return Fibration(fib.base(), std::move(out), std::move(stages));
}

bool LiftResult::ok() const {
  return commutes && std::all_of(g_iso.begin(), g_iso.end(), [](const DegreeIso& d) { return d.isomorphism; });
}

LiftResult lift_fibration(const Fibration& input, const MinimalModel& mm, int n_half) {
  if (!mm.target_map) throw InvalidInput("lift: the model has no map to a concrete algebra");
  const Morphism& f = *mm.target_map;
  if (!(f.target() == input.base())) throw InvalidInput("lift: model target is not the fibration base");
  Fibration fib = sorted_by_stage(input);
  const DGAlgebra& E = fib.total();

  DGAlgebra L = mm.model;
  std::vector<Element> g_images = f.images();  // base ids coincide with total ids
  for (GeneratorId x : fib.fiber_generators()) {
    DGAlgebra e_prev = prefix(E, x);
    const Element& a = E.differential(x);
    const int deg = E.generator(x).degree + 1;
    Morphism g_prev(L, e_prev, g_images);
    Cochains cl(L), ce(e_prev);
    SparseVector target = ce.class_coordinates(a, deg);
    auto y = reduce_columns(induced_map(g_prev, cl, ce, deg)).solve(target);
    if (!y) throw InvalidInput("lift: [d " + E.generator(x).name + "] has no preimage in the model");
    Element a_tilde = cl.class_element(*y, deg);
    auto c = ce.preimage(g_prev.apply(a_tilde) - a, deg);
    if (!c) throw std::logic_error("lift: discrepancy is not exact");
    L.add_generator(E.generator(x).name, E.generator(x).degree, a_tilde);
    g_images.push_back(E.gen(x) + *c);
  }
  LiftResult out{Fibration(mm.model, L, fib.stages()), Morphism(L, E, g_images), true, {}};
  for (GeneratorId m = 0; m < mm.model.size(); ++m)
    if (out.g.apply(L.gen(m)) != f.image(m)) out.commutes = false;
  if (!validate_morphism(out.g, INT_MAX).ok()) out.commutes = false;
  Cochains cl(L), ce(E);
  for (int n = 0; n <= 2 * n_half - 1; ++n) {
    SparseMatrix m = induced_map(out.g, cl, ce, n);
    out.g_iso.push_back({n, m.cols(), m.rows(), m.rows() == m.cols() && rank(m) == m.rows()});
  }
  return out;
}

std::string_view to_string(PipelineReport::Verdict v) {
  return v == PipelineReport::Verdict::Refuted ? "refuted" : "certified";
}

PipelineReport theorem_b_pipeline(const Fibration& fib, const CohomologyClass& alpha, int n_half) {
  if (n_half < 1) throw InvalidInput("pipeline: N must be positive");
  const int deg = alpha.degree;
  if (deg < 1 || deg % 2 == 0) throw InvalidInput("pipeline: class must have odd degree");
  const int cutoff = 2 * n_half;
  int fiber_top = 0;
  for (GeneratorId g : fib.fiber_generators()) fiber_top = std::max(fiber_top, fib.total().generator(g).degree);
  FibrationReport fr = validate_fibration(fib, std::max(cutoff, fiber_top) + 2);
  if (!fr.ok()) throw InvalidInput("pipeline: invalid fibration");
  if (auto e = first_even_class(fib.base(), cutoff))
    throw InvalidInput("pipeline: H^" + std::to_string(*e) + " of the base is nonzero");

  const DGAlgebra& B = fib.base();
  B.check_member(alpha.representative);
  Cochains cb(B);
  SparseVector coords = cb.class_coordinates(alpha.representative, deg);
  if (coords.empty()) throw InvalidInput("pipeline: class is zero");

  PipelineReport r;
  r.n_half = n_half;
  r.cutoff = cutoff;
  Cochains ce(fib.total());
  SparseVector image = ce.class_coordinates(alpha.representative, deg);
  if (!image.empty()) {
    r.verdict = PipelineReport::Verdict::Refuted;
    r.image_coordinates = image;
    r.trace.push_back("iota*(alpha) != 0: the class does not die");
    return r;
  }
  r.trace.push_back("iota*(alpha) = 0");

  MinimalModel mm = minimal_model(B, std::max(cutoff, fiber_top + 1));
  r.trace.push_back("minimal model of the base through degree " + std::to_string(mm.cutoff) + ": " +
                    std::to_string(mm.model.size()) + " generators");
  LiftResult lift = lift_fibration(fib, mm, n_half);
  r.trace.push_back(std::string("lifted fibration: square ") + (lift.commutes ? "commutes" : "fails") +
                    ", g* " + (lift.ok() ? "iso" : "not iso") + " through degree " +
                    std::to_string(2 * n_half - 1));
  if (!lift.ok()) throw std::logic_error("pipeline: lift is not a quasi-isomorphism");

  Cochains cm(mm.model);
  auto y = reduce_columns(induced_map(*mm.target_map, cm, cb, deg)).solve(coords);
  if (!y) throw std::logic_error("pipeline: model map is not onto alpha");
  Element a_model = cm.class_element(*y, deg);
  r.alpha_model = a_model;

  std::string eta = fresh(lift.lifted.total(), "eta");
  PsiResult psi = psi_to_sphere(mm.model, {deg, a_model}, eta);
  r.representing_generator = mm.model.generator(psi.representing).name;
  r.trace.push_back("psi sends " + r.representing_generator + " to " + eta);

  Fibration pushed = pushforward(lift.lifted, psi.psi);
  Cochains cp(pushed.total());
  r.tau_kills_eta = cp.is_exact(pushed.total().gen(0), deg);
  r.trace.push_back(std::string("tau*(") + eta + ") " + (r.tau_kills_eta ? "= 0" : "!= 0"));
  r.engine = sphere_engine(pushed, cutoff);
  r.verdict = PipelineReport::Verdict::Certified;
  return r;
}

namespace {

struct Candidate {
  std::vector<int> degrees;
  std::vector<std::vector<Monomial>> supports;  // per generator, over base + earlier generators
};

struct Outcome {
  bool valid = false;
  std::optional<SearchHit> hit;
};

Outcome evaluate(const SearchSpace& space, const CohomologyClass& target, const Candidate& cand,
                 const std::vector<int>& coeffs, std::size_t index) {
  Fibration fib = Fibration::trivial(space.base);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < cand.degrees.size(); ++i) {
    Element d;
    int stage = 0;
    for (const auto& m : cand.supports[i]) {
      int c = coeffs[pos++];
      if (c == 0) continue;
      d = d + Element::term(m, c);
      for (const auto& f : m.factors())
        if (fib.is_fiber(f.generator)) stage = std::max(stage, fib.stage_of(f.generator) + 1);
    }
    fib = fib.with_fiber_generator(fresh(fib.total(), "v" + std::to_string(i)), cand.degrees[i], d, stage);
  }
  Outcome out;
  if (!validate(fib.total(), space.cutoff + 1).ok()) return out;
  out.valid = true;
  Cochains ct(fib.total());
  if (!ct.is_exact(target.representative, target.degree)) return out;
  out.hit = SearchHit{index, fib, fiber_dimension_probe(fib, space.cutoff, space.margin)};
  return out;
}

}  // namespace

SearchReport search_killing_fibrations(const SearchSpace& space, const CohomologyClass& target,
                                       unsigned threads) {
  space.base.check_member(target.representative);
  std::vector<int> allowed = space.fiber_degrees;
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  for (int d : allowed)
    if (d < 1) throw InvalidInput("search: fiber degrees must be positive");
  if (space.coefficient_range < 0) throw InvalidInput("search: negative coefficient range");

  std::vector<Candidate> cands;
  std::vector<int> seq;
  std::function<void()> sequences = [&] {
    if (!seq.empty()) {
      Candidate c{seq, {}};
      DGAlgebra a = space.base;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        c.supports.push_back(basis_of_degree(a, seq[i] + 1).monomials);
        a.add_generator(fresh(a, "v" + std::to_string(i)), seq[i]);
      }
      cands.push_back(std::move(c));
    }
    if (static_cast<int>(seq.size()) >= space.max_generators) return;
    for (int d : allowed) {
      seq.push_back(d);
      sequences();
      seq.pop_back();
    }
  };
  sequences();

  const int width = 2 * space.coefficient_range + 1;
  SearchReport report;
  std::vector<std::pair<std::size_t, std::size_t>> work;  // (candidate, first index)
  for (std::size_t ci = 0; ci < cands.size(); ++ci) {
    std::size_t slots = 0;
    for (const auto& s : cands[ci].supports) slots += s.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < slots; ++i) {
      count *= width;
      if (count > space.enumeration_cap) break;
    }
    work.emplace_back(ci, report.enumerated);
    report.enumerated += count;
    if (report.enumerated > space.enumeration_cap)
      throw ResourceBound("search: more than " + std::to_string(space.enumeration_cap) + " candidates");
  }

  // Each task walks its share of the global enumeration index range.
  auto run = [&](std::size_t begin, std::size_t end) {
    std::vector<Outcome> outs;
    for (std::size_t index = begin; index < end; ++index) {
      auto it = std::upper_bound(work.begin(), work.end(), index,
                                 [](std::size_t v, const auto& w) { return v < w.second; });
      const auto& [ci, first] = *(it - 1);
      const Candidate& cand = cands[ci];
      std::size_t slots = 0;
      for (const auto& s : cand.supports) slots += s.size();
      std::vector<int> coeffs(slots);
      std::size_t local = index - first;
      for (std::size_t i = slots; i-- > 0;) {  // last slot varies fastest
        coeffs[i] = static_cast<int>(local % width) - space.coefficient_range;
        local /= width;
      }
      outs.push_back(evaluate(space, target, cand, coeffs, index));
    }
    return outs;
  };

  const std::size_t total = report.enumerated;
  const unsigned t = std::max(1u, threads);
  std::vector<std::future<std::vector<Outcome>>> jobs;
  const std::size_t chunk = (total + t - 1) / t;
  for (unsigned i = 0; i < t; ++i) {
    std::size_t b = std::min(total, i * chunk), e = std::min(total, b + chunk);
    jobs.push_back(std::async(t > 1 ? std::launch::async : std::launch::deferred, run, b, e));
  }
  for (auto& j : jobs)
    for (auto& o : j.get()) {
      if (!o.valid) continue;
      ++report.valid;
      if (o.hit) {
        if (o.hit->fiber.finite()) ++report.finite_hits;
        report.hits.push_back(std::move(*o.hit));
      }
    }
  return report;
}

}  // namespace sullivan
