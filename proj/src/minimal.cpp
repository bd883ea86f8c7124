#include "sullivan/minimal.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <set>

namespace sullivan {

namespace {

Element apply_images(const DGAlgebra& tgt, const std::vector<Element>& images, const Element& e) {
  Element out;
  for (const auto& [m, c] : e.terms()) {
    Element img(c);
    for (const auto& f : m.factors()) {
      img = tgt.multiply(img, tgt.power(images.at(f.generator), f.exponent));
      if (img.is_zero()) break;
    }
    out = out + img;
  }
  return out;
}

std::string fresh_name(const DGAlgebra& a, std::string name) {
  while (a.find(name)) name += "_";
  return name;
}

// What the induction needs from a target: its cohomology dimensions, the
// class of f(z) for a cocycle z of the partial model, and a way to extend f
// to new generators.
class Target {
 public:
  virtual ~Target() = default;
  virtual std::size_t dim(int n) = 0;
  virtual SparseVector image_class(const DGAlgebra& model, const Element& z, int n) = 0;
  virtual std::optional<std::string> v1_name(int n, std::size_t i) = 0;
  virtual void push_v1(int n, std::size_t i) = 0;
  // c is a cocycle of degree n + 1 with [f(c)] = 0; the new generator has degree n.
  virtual void push_v2(const DGAlgebra& model, const Element& c, int n) = 0;
};

class ConcreteTarget final : public Target {
 public:
  explicit ConcreteTarget(const DGAlgebra& a) : cochains_(a) {}

  std::size_t dim(int n) override { return cochains_.betti(n); }

  SparseVector image_class(const DGAlgebra&, const Element& z, int n) override {
    return cochains_.class_coordinates(apply_images(cochains_.algebra(), images_, z), n);
  }

  std::optional<std::string> v1_name(int n, std::size_t i) override {
    const Element& rep = cochains_.cohomology(n).representatives[i];
    if (rep.size() != 1) return std::nullopt;
    const auto& [m, c] = *rep.terms().begin();
    if (c != 1 || m.factors().size() != 1 || m.factors()[0].exponent != 1) return std::nullopt;
    return cochains_.algebra().generator(m.factors()[0].generator).name;
  }

  void push_v1(int n, std::size_t i) override {
    images_.push_back(cochains_.cohomology(n).representatives[i]);
  }

  void push_v2(const DGAlgebra&, const Element& c, int n) override {
    Element fc = apply_images(cochains_.algebra(), images_, c);
    auto theta = cochains_.preimage(fc, n + 1);
    if (!theta) throw std::logic_error("minimal model: image of a kernel class is not exact");
    images_.push_back(*theta);
  }

  std::vector<Element> images_;

 private:
  Cochains cochains_;
};

class BouquetTarget final : public Target {
 public:
  explicit BouquetTarget(const BouquetSpec& spec) : spec_(spec) {
    for (std::size_t i = 0; i < spec.labels.size(); ++i) {
      auto& v = by_degree_[spec.labels[i].degree];
      local_[i] = v.size();
      v.push_back(i);
    }
  }

  std::size_t dim(int n) override {
    if (n == 0) return 1;
    auto it = by_degree_.find(n);
    return it == by_degree_.end() ? 0 : it->second.size();
  }

  SparseVector image_class(const DGAlgebra& model, const Element& z, int n) override {
    if (n == 0) return SparseVector({{0, z.coefficient(Monomial{})}});
    SparseVector global;
    for (const auto& [m, c] : z.terms())
      if (m.factors().size() == 1 && m.factors()[0].exponent == 1)
        global = global + images_.at(m.factors()[0].generator) * c;
    std::vector<SparseVector::Entry> local;
    for (const auto& [i, q] : global.entries()) local.emplace_back(local_.at(i), q);
    (void)model;
    return SparseVector(std::move(local));
  }

  std::optional<std::string> v1_name(int n, std::size_t i) override {
    return spec_.labels[by_degree_.at(n)[i]].name;
  }

  void push_v1(int n, std::size_t i) override {
    images_.push_back(SparseVector::unit(by_degree_.at(n)[i]));
  }

  void push_v2(const DGAlgebra&, const Element&, int) override { images_.emplace_back(); }

  std::vector<SparseVector> images_;

 private:
  const BouquetSpec& spec_;
  std::map<int, std::vector<std::size_t>> by_degree_;
  std::map<std::size_t, std::size_t> local_;
};

DGAlgebra induce(Target& target, int cutoff, const ModelOptions& opt) {
  DGAlgebra m;
  for (int n = 1; n <= cutoff; ++n) {
    {
      Cochains cm(m);
      std::vector<SparseVector> image;
      for (const auto& rep : cm.cohomology(n).representatives)
        image.push_back(target.image_class(m, rep, n));
      Echelon span = row_reduce(image);
      std::size_t added = 0;
      for (std::size_t i = 0; i < target.dim(n); ++i) {
        SparseVector e = SparseVector::unit(i);
        if (span.contains(e)) continue;
        image.push_back(e);
        span = row_reduce(image);
        auto name = target.v1_name(n, i);
        m.add_generator(fresh_name(m, name ? *name : "v" + std::to_string(n) + "_" + std::to_string(added)), n);
        target.push_v1(n, i);
        ++added;
      }
    }
    std::size_t killed = 0;
    for (int round = 0;; ++round) {
      Cochains cm(m);
      const auto& reps = cm.cohomology(n + 1).representatives;
      std::vector<SparseVector> cols;
      for (const auto& r : reps) cols.push_back(target.image_class(m, r, n + 1));
      ColumnReduction red = reduce_columns(SparseMatrix(target.dim(n + 1), std::move(cols)));
      if (red.kernel.rank() == 0) break;
      if (round >= opt.max_rounds)
        throw ResourceBound("minimal model: degree " + std::to_string(n) + " did not settle after " +
                            std::to_string(opt.max_rounds) + " rounds");
      for (const auto& row : red.kernel.rows) {
        Element c;
        for (const auto& [j, q] : row.entries()) c = c + reps[j] * q;
        m.add_generator(fresh_name(m, "u" + std::to_string(n) + "_" + std::to_string(killed++)), n, c);
        target.push_v2(m, c, n);
      }
    }
  }
  return m;
}

}  // namespace

void BouquetSpec::check() const {
  std::set<std::string> names;
  for (const auto& l : labels) {
    if (l.degree < 1 || l.degree % 2 == 0)
      throw InvalidInput("bouquet label '" + l.name + "' must have odd positive degree");
    if (l.name.empty() || !names.insert(l.name).second)
      throw InvalidInput("bouquet labels must have distinct nonempty names");
  }
}

BouquetDegree bouquet_cohomology(const BouquetSpec& spec, int n) {
  spec.check();
  BouquetDegree out;
  if (n == 0) {
    out.dimension = 1;
    return out;
  }
  for (const auto& l : spec.labels)
    if (l.degree == n) out.labels.push_back(l.name);
  out.dimension = out.labels.size();
  return out;
}

std::map<int, std::size_t> MinimalModel::generator_counts() const {
  std::map<int, std::size_t> counts;
  for (const auto& g : model.generators()) ++counts[g.degree];
  return counts;
}

MinimalModel minimal_model(const DGAlgebra& target, int cutoff, ModelOptions opt) {
  ValidationReport r = validate(target, cutoff + 1);
  if (!r.ok()) throw InvalidInput("minimal model: invalid target: " + r.first()->detail);
  ConcreteTarget t(target);
  if (t.dim(1) >= 2)
    throw InvalidInput("minimal model: dim H^1 >= 2 is not supported in degree-truncated form");
  DGAlgebra m = induce(t, cutoff, opt);
  MinimalModel out{m, Morphism(m, target, t.images_), {}, {}, cutoff};
  return out;
}

MinimalModel bouquet_model(const BouquetSpec& spec, int cutoff, ModelOptions opt) {
  spec.check();
  if (std::count_if(spec.labels.begin(), spec.labels.end(), [](const auto& l) { return l.degree == 1; }) >= 2)
    throw InvalidInput("bouquet model: two or more degree-1 labels are not supported");
  BouquetTarget t(spec);
  DGAlgebra m = induce(t, cutoff, opt);
  return {m, std::nullopt, t.images_, spec.labels, cutoff};
}

std::vector<DegreeIso> cohomology_comparison(const MinimalModel& m, int cutoff) {
  std::vector<DegreeIso> out;
  Cochains cm(m.model);
  std::optional<Cochains> ct;
  std::optional<BouquetTarget> bt;
  BouquetSpec spec{m.labels};
  if (m.target_map) {
    ct.emplace(m.target_map->target());
  } else {
    bt.emplace(spec);
    bt->images_ = m.label_map;
  }
  for (int n = 0; n <= cutoff; ++n) {
    DegreeIso d;
    d.degree = n;
    d.model_dimension = cm.betti(n);
    SparseMatrix f = m.target_map ? induced_map(*m.target_map, cm, *ct, n) : [&] {
      std::vector<SparseVector> cols;
      for (const auto& r : cm.cohomology(n).representatives) cols.push_back(bt->image_class(m.model, r, n));
      return SparseMatrix(bt->dim(n), std::move(cols));
    }();
    d.target_dimension = f.rows();
    d.isomorphism = f.rows() == f.cols() && rank(f) == f.rows();
    out.push_back(d);
  }
  return out;
}

bool is_quasi_isomorphism(const MinimalModel& m, int cutoff) {
  auto cmp = cohomology_comparison(m, cutoff);
  return std::all_of(cmp.begin(), cmp.end(), [](const DegreeIso& d) { return d.isomorphism; });
}

bool is_minimal(const DGAlgebra& a) {
  for (const auto& g : a.generators())
    for (const auto& [m, c] : a.differential(g.id).terms())
      if (m.length() < 2) return false;
  return true;
}

Truncation truncate(const DGAlgebra& model, int k) {
  Truncation t;
  t.k = k;
  for (const auto& g : model.generators())
    if (g.degree <= k) {
      t.subalgebra.add_generator(g.name, g.degree);
      t.parent_ids.push_back(g.id);
    }
  std::vector<Element> images;
  for (const auto& g : model.generators()) {
    auto id = t.subalgebra.find(g.name);
    images.push_back(id ? t.subalgebra.gen(*id) : Element{});
  }
  for (std::size_t i = 0; i < t.parent_ids.size(); ++i) {
    const Element& dg = model.differential(t.parent_ids[i]);
    for (const auto& [m, c] : dg.terms())
      for (const auto& f : m.factors())
        if (model.generator(f.generator).degree > k)
          throw InvalidInput("truncate: d " + model.generator(t.parent_ids[i]).name +
                             " leaves the truncation");
    t.subalgebra.set_differential(i, apply_images(t.subalgebra, images, dg));
  }
  return t;
}

LemmaCheck lemma_5_1_check(const Truncation& t) {
  Cochains c(t.subalgebra);
  return {t.k, c.betti(t.k + 1), c.betti(t.k + 2)};
}

GeneratorRepresentation generator_representation(const DGAlgebra& model, int n) {
  Cochains c(model);
  GeneratorRepresentation out;
  out.degree = n;
  out.betti = c.betti(n);
  const DegreeBasis& next = c.basis(n + 1);
  std::vector<GeneratorId> gens;
  std::vector<SparseVector> cols;
  for (const auto& g : model.generators())
    if (g.degree == n) {
      gens.push_back(g.id);
      cols.push_back(next.coordinates(model.differential(g.id)));
    }
  ColumnReduction red = reduce_columns(SparseMatrix(next.size(), std::move(cols)));
  std::vector<SparseVector> classes;
  for (const auto& row : red.kernel.rows) {
    Element z;
    for (const auto& [j, q] : row.entries()) z = z + model.gen(gens[j]) * q;
    classes.push_back(c.class_coordinates(z, n));
  }
  out.represented = row_reduce(classes).rank();
  return out;
}

std::optional<int> first_even_class(const DGAlgebra& b, int limit) {
  Cochains c(b);
  for (int k2 = 2; k2 <= limit; k2 += 2)
    if (c.betti(k2) != 0) return k2;
  return std::nullopt;
}

Morphism build_phi_k(const DGAlgebra& b, int n_half, int k) {
  if (n_half < 1) throw InvalidInput("phi_k: N must be positive");
  if (k < 1 || k % 2 == 0 || k > 2 * n_half - 1)
    throw InvalidInput("phi_k: k must be odd with 1 <= k <= 2N - 1");
  ValidationReport r = validate(b, 2 * n_half + 1);
  if (!r.ok()) throw InvalidInput("phi_k: invalid algebra: " + r.first()->detail);
  if (auto deg = first_even_class(b, 2 * n_half))
    throw InvalidInput("phi_k: H^" + std::to_string(*deg) + " is nonzero");
  MinimalModel m = minimal_model(b, k);
  Truncation t = truncate(m.model, k);
  std::vector<Element> images;
  for (GeneratorId g : t.parent_ids) images.push_back(m.target_map->image(g));
  return Morphism(t.subalgebra, b, std::move(images));
}

BouquetSpec bouquet_of_classes(const DGAlgebra& b, int limit) {
  Cochains c(b);
  BouquetSpec spec;
  for (int n = 1; n <= limit; n += 2)
    for (std::size_t i = 0; i < c.betti(n); ++i)
      spec.labels.push_back({"h" + std::to_string(n) + "_" + std::to_string(i), n});
  return spec;
}

ModelComparison compare_models(const DGAlgebra& b, int n_half) {
  if (n_half < 1) throw InvalidInput("compare: N must be positive");
  ValidationReport r = validate(b, 2 * n_half + 2);
  if (!r.ok()) throw InvalidInput("compare: invalid algebra: " + r.first()->detail);
  if (auto deg = first_even_class(b, 2 * n_half))
    throw InvalidInput("compare: H^" + std::to_string(*deg) + " is nonzero");
  const int top = 2 * n_half - 1;
  ModelComparison out;
  out.n_half = n_half;
  MinimalModel mb = minimal_model(b, top);
  BouquetSpec spec = bouquet_of_classes(b, 2 * n_half + 1);
  MinimalModel mx = bouquet_model(spec, top);
  out.labels = spec.labels;
  out.model_counts = mb.generator_counts();
  out.bouquet_counts = mx.generator_counts();
  out.counts_equal = out.model_counts == out.bouquet_counts;
  out.model_quasi_isomorphism = is_quasi_isomorphism(mb, top);
  out.bouquet_quasi_isomorphism = is_quasi_isomorphism(mx, top);
  return out;
}

PsiResult psi_to_sphere(const DGAlgebra& mb, const CohomologyClass& alpha, const std::string& eta) {
  const int n = alpha.degree;
  if (n < 1 || n % 2 == 0) throw InvalidInput("psi: class must have odd degree");
  mb.check_member(alpha.representative);
  if (!mb.is_homogeneous(alpha.representative, n))
    throw InvalidInput("psi: representative is not homogeneous of degree " + std::to_string(n));
  Cochains c(mb);
  SparseVector target = c.class_coordinates(alpha.representative, n);
  if (target.empty()) throw InvalidInput("psi: class is zero");

  // cocycle combinations of degree-n generators and their classes
  const DegreeBasis& next = c.basis(n + 1);
  std::vector<GeneratorId> gens;
  std::vector<SparseVector> dcols;
  for (const auto& g : mb.generators())
    if (g.degree == n) {
      gens.push_back(g.id);
      dcols.push_back(next.coordinates(mb.differential(g.id)));
    }
  ColumnReduction red = reduce_columns(SparseMatrix(next.size(), std::move(dcols)));
  std::vector<SparseVector> classes;
  for (const auto& row : red.kernel.rows) {
    Element z;
    for (const auto& [j, q] : row.entries()) z = z + mb.gen(gens[j]) * q;
    classes.push_back(c.class_coordinates(z, n));
  }
  auto solved = reduce_columns(SparseMatrix(c.betti(n), classes)).solve(target);
  if (!solved) throw InvalidInput("psi: class is not represented by a combination of generators");
  SparseVector combo;
  for (const auto& [i, q] : solved->entries()) combo = combo + red.kernel.rows[i] * q;

  DGAlgebra sphere;
  sphere.add_generator(eta, n);
  std::vector<Element> images(mb.size());
  const auto& [lead, coeff] = combo.entries().front();
  images[gens[lead]] = sphere.gen(0) * (Rational(1) / coeff);
  PsiResult out{Morphism(mb, sphere, images), gens[lead], {}, {}};
  for (const auto& [j, q] : combo.entries()) out.combination = out.combination + mb.gen(gens[j]) * q;
  out.image_of_alpha = out.psi.apply(alpha.representative);
  return out;
}

bool OddBouquetReport::ok() const {
  return odd_generators_only && counts_equal &&
         std::all_of(represented.begin(), represented.end(), [](const auto& r) { return r.ok(); });
}

OddBouquetReport verify_odd_bouquet_model(const DGAlgebra& c, int cutoff) {
  ValidationReport r = validate(c, cutoff + 2);
  if (!r.ok()) throw InvalidInput("odd bouquet: invalid algebra: " + r.first()->detail);
  if (auto deg = first_even_class(c, cutoff))
    throw InvalidInput("odd bouquet: H^" + std::to_string(*deg) + " is nonzero");
  OddBouquetReport out{cutoff, minimal_model(c, cutoff), {}, {}, true, {}, 0, true};
  BouquetSpec spec = bouquet_of_classes(c, cutoff + 1);
  out.labels = spec.labels;
  out.bouquet_counts = bouquet_model(spec, cutoff).generator_counts();
  for (const auto& g : out.model.model.generators())
    if (!g.odd()) out.odd_generators_only = false;
  for (int n = 1; n <= cutoff; ++n) out.represented.push_back(generator_representation(out.model.model, n));

  // Degree-cutoff generators kill classes of degree cutoff + 1, where C may
  // carry even cohomology the bouquet lacks; compare there only when it doesn't.
  Cochains cc(c);
  out.compared_through = (cutoff + 1) % 2 == 1 || cc.betti(cutoff + 1) == 0 ? cutoff : cutoff - 1;
  auto mine = out.model.generator_counts();
  for (int n = 1; n <= out.compared_through; ++n) {
    std::size_t a = mine.count(n) ? mine.at(n) : 0, b = out.bouquet_counts.count(n) ? out.bouquet_counts.at(n) : 0;
    if (a != b) out.counts_equal = false;
  }
  return out;
}

LieTable free_lie_dimensions(const std::vector<int>& letter_degrees, int max_length) {
  for (int d : letter_degrees)
    if (d < 3 || d % 2 == 0)
      throw InvalidInput("free Lie dimensions: letters must have odd degree >= 3, got " + std::to_string(d));
  LieTable t;
  t.by_length.assign(std::max(max_length, 0), 0);
  const int k = static_cast<int>(letter_degrees.size());
  if (k == 0 || max_length < 1) return t;
  // Duval's generation of Lyndon words in lexicographic order.
  std::vector<int> w{0};
  while (!w.empty()) {
    const int len = static_cast<int>(w.size());
    ++t.by_length[len - 1];
    int weight = 0;
    for (int c : w) weight += letter_degrees[c] - 1;
    ++t.by_model_degree[weight + 1];
    const std::size_t period = w.size();
    while (static_cast<int>(w.size()) < max_length) w.push_back(w[w.size() - period]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return t;
}

}  // namespace sullivan
