#include "sullivan/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sullivan {

Monomial Monomial::of(GeneratorId g, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.push_back({g, exponent});
  return m;
}

Monomial Monomial::from_canonical(std::vector<Factor> factors) {
  Monomial m;
  m.factors_ = std::move(factors);
  return m;
}

unsigned Monomial::length() const {
  unsigned n = 0;
  for (const auto& f : factors_) n += f.exponent;
  return n;
}

unsigned Monomial::exponent_of(GeneratorId g) const {
  for (const auto& f : factors_)
    if (f.generator == g) return f.exponent;
  return 0;
}

GeneratorId Monomial::max_generator() const { return factors_.back().generator; }

Element::Element(Rational scalar) {
  if (scalar != 0) terms_.emplace(Monomial{}, std::move(scalar));
}

Element Element::term(Monomial m, Rational coefficient) {
  Element e;
  if (coefficient != 0) e.terms_.emplace(std::move(m), std::move(coefficient));
  return e;
}

Element Element::from_terms(Terms terms) {
  Element e;
  for (auto& [m, c] : terms)
    if (c != 0) e.terms_.emplace(m, std::move(c));
  return e;
}

Rational Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Element::mentions(GeneratorId g) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [g](const auto& t) { return t.first.exponent_of(g) > 0; });
}

Element Element::operator+(const Element& other) const {
  Element r = *this;
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = r.terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

Element Element::operator-(const Element& other) const { return *this + (-other); }

Element Element::operator-() const {
  Element r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Element Element::operator*(const Rational& scalar) const {
  if (scalar == 0) return {};
  Element r = *this;
  for (auto& t : r.terms_) t.second *= scalar;
  return r;
}

GeneratorId DGAlgebra::add_generator(std::string name, int degree, Element differential) {
  if (degree < 1)
    throw InvalidInput("generator '" + name + "' must have positive degree, got " +
                       std::to_string(degree));
  if (name.empty()) throw InvalidInput("generator name must be nonempty");
  if (by_name_.count(name)) throw InvalidInput("duplicate generator name '" + name + "'");
  GeneratorId id = generators_.size();
  by_name_.emplace(name, id);
  generators_.push_back({id, std::move(name), degree});
  differentials_.emplace_back();
  if (!differential.is_zero()) set_differential(id, std::move(differential));
  return id;
}

void DGAlgebra::set_differential(GeneratorId g, Element differential) {
  if (g >= size()) throw InvalidInput("set_differential: unknown generator id");
  check_member(differential);
  differentials_[g] = std::move(differential);
}

const Generator& DGAlgebra::generator(GeneratorId g) const {
  if (g >= size()) throw InvalidInput("unknown generator id " + std::to_string(g));
  return generators_[g];
}

const Element& DGAlgebra::differential(GeneratorId g) const {
  if (g >= size()) throw InvalidInput("unknown generator id " + std::to_string(g));
  return differentials_[g];
}

std::optional<GeneratorId> DGAlgebra::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

GeneratorId DGAlgebra::id_of(std::string_view name) const {
  if (auto g = find(name)) return *g;
  throw InvalidInput("unknown generator '" + std::string(name) + "'");
}

Element DGAlgebra::gen(GeneratorId g) const {
  (void)generator(g);
  return Element::term(Monomial::of(g));
}

Element DGAlgebra::gen(std::string_view name) const { return gen(id_of(name)); }

int DGAlgebra::max_degree() const {
  int m = 0;
  for (const auto& g : generators_) m = std::max(m, g.degree);
  return m;
}

int DGAlgebra::degree(const Monomial& m) const {
  int n = 0;
  for (const auto& f : m.factors()) n += generator(f.generator).degree * static_cast<int>(f.exponent);
  return n;
}

std::optional<int> DGAlgebra::degree(const Element& e) const {
  std::optional<int> n;
  for (const auto& [m, c] : e.terms()) {
    int k = degree(m);
    if (n && *n != k) return std::nullopt;
    n = k;
  }
  return n;
}

bool DGAlgebra::is_homogeneous(const Element& e, int n) const {
  return std::all_of(e.terms().begin(), e.terms().end(),
                     [&](const auto& t) { return degree(t.first) == n; });
}

Normalized DGAlgebra::normalize(std::span<const Factor> factors) const {
  std::vector<Factor> fs;
  fs.reserve(factors.size());
  for (const auto& f : factors) {
    (void)generator(f.generator);
    if (f.exponent > 0) fs.push_back(f);
  }
  auto odd_factor = [&](const Factor& f) {
    return generators_[f.generator].odd() && f.exponent % 2 == 1;
  };
  // Each transposition of two odd factors contributes a sign.
  int sign = 1;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (!odd_factor(fs[i])) continue;
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      if (fs[j].generator < fs[i].generator && odd_factor(fs[j])) sign = -sign;
  }
  std::stable_sort(fs.begin(), fs.end(),
                   [](const Factor& a, const Factor& b) { return a.generator < b.generator; });
  std::vector<Factor> merged;
  for (const auto& f : fs) {
    if (!merged.empty() && merged.back().generator == f.generator)
      merged.back().exponent += f.exponent;
    else
      merged.push_back(f);
  }
  for (const auto& f : merged)
    if (generators_[f.generator].odd() && f.exponent > 1) return {0, Monomial{}};
  return {sign, Monomial::from_canonical(std::move(merged))};
}

Element DGAlgebra::multiply(const Element& a, const Element& b) const {
  Element::Terms out;
  std::vector<Factor> buf;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      buf.assign(ma.factors().begin(), ma.factors().end());
      buf.insert(buf.end(), mb.factors().begin(), mb.factors().end());
      Normalized n = normalize(buf);
      if (n.sign == 0) continue;
      Rational c = ca * cb;
      if (n.sign < 0) c = -c;
      auto [it, inserted] = out.emplace(std::move(n.monomial), c);
      if (!inserted) it->second += c;
    }
  }
  return Element::from_terms(std::move(out));
}

Element DGAlgebra::power(const Element& a, unsigned n) const {
  Element r(Rational(1));
  for (unsigned i = 0; i < n; ++i) r = multiply(r, a);
  return r;
}

Element DGAlgebra::d_monomial(const Monomial& m) const {
  const auto& fs = m.factors();
  Element out;
  int prefix_degree = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Generator& g = generators_[fs[i].generator];
    const Element& dg = differentials_[g.id];
    if (!dg.is_zero()) {
      // d(g^e) = e g^(e-1) dg, placed between prefix and suffix.
      std::vector<Factor> prefix(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<Factor> suffix(fs.begin() + static_cast<std::ptrdiff_t>(i) + 1, fs.end());
      if (fs[i].exponent > 1) prefix.push_back({g.id, fs[i].exponent - 1});
      Element left = Element::term(normalize(prefix).monomial);
      Element right = Element::term(Monomial::from_canonical(std::move(suffix)));
      Rational c(static_cast<long>(fs[i].exponent));
      if (prefix_degree % 2 != 0) c = -c;
      out = out + multiply(multiply(left, dg), right) * c;
    }
    prefix_degree += g.degree * static_cast<int>(fs[i].exponent);
  }
  return out;
}

Element DGAlgebra::d(const Element& e) const {
  check_member(e);
  Element out;
  for (const auto& [m, c] : e.terms()) out = out + d_monomial(m) * c;
  return out;
}

void DGAlgebra::check_member(const Element& e) const {
  for (const auto& [m, c] : e.terms())
    for (const auto& f : m.factors())
      if (f.generator >= size())
        throw InvalidInput("element references generator id " + std::to_string(f.generator) +
                           " outside an algebra with " + std::to_string(size()) + " generators");
}

Morphism::Morphism(DGAlgebra source, DGAlgebra target, std::vector<Element> images)
    : source_(std::make_shared<const DGAlgebra>(std::move(source))),
      target_(std::make_shared<const DGAlgebra>(std::move(target))),
      images_(std::move(images)) {
  if (images_.size() != source_->size())
    throw InvalidInput("morphism needs one image per source generator");
  for (const auto& e : images_) target_->check_member(e);
}

Morphism Morphism::identity(const DGAlgebra& a) {
  std::vector<Element> images;
  for (const auto& g : a.generators()) images.push_back(a.gen(g.id));
  return Morphism(a, a, std::move(images));
}

Morphism Morphism::inclusion(const DGAlgebra& sub, const DGAlgebra& total) {
  std::vector<Element> images;
  for (const auto& g : sub.generators()) images.push_back(total.gen(g.name));
  return Morphism(sub, total, std::move(images));
}

Element Morphism::apply(const Element& e) const {
  source_->check_member(e);
  Element out;
  for (const auto& [m, c] : e.terms()) {
    Element img(c);
    for (const auto& f : m.factors()) {
      img = target_->multiply(img, target_->power(images_[f.generator], f.exponent));
      if (img.is_zero()) break;
    }
    out = out + img;
  }
  return out;
}

Morphism Morphism::then(const Morphism& next) const {
  std::vector<Element> images;
  for (const auto& img : images_) images.push_back(next.apply(img));
  return Morphism(*source_, next.target(), std::move(images));
}

Morphism augmentation(const DGAlgebra& a) {
  return Morphism(a, DGAlgebra{}, std::vector<Element>(a.size()));
}

std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::DegreeMismatch: return "degree_mismatch";
    case Violation::Kind::DSquaredNonzero: return "d_squared_nonzero";
    case Violation::Kind::NotChainMap: return "not_chain_map";
    case Violation::Kind::Filtration: return "filtration";
  }
  return "unknown";
}

ValidationReport validate(const DGAlgebra& a, int cutoff) {
  ValidationReport report;
  for (const auto& g : a.generators()) {
    if (g.degree > cutoff) continue;
    const Element& dg = a.differential(g.id);
    if (!a.is_homogeneous(dg, g.degree + 1)) {
      report.violations.push_back({Violation::Kind::DegreeMismatch, g.id, g.name,
                                   "d " + g.name + " = " + to_string(a, dg) +
                                       " is not homogeneous of degree " +
                                       std::to_string(g.degree + 1)});
      continue;
    }
    Element dd = a.d(dg);
    if (!dd.is_zero())
      report.violations.push_back({Violation::Kind::DSquaredNonzero, g.id, g.name,
                                   "d(d " + g.name + ") = " + to_string(a, dd)});
  }
  return report;
}

ValidationReport validate_morphism(const Morphism& f, int cutoff) {
  ValidationReport report;
  const DGAlgebra& src = f.source();
  const DGAlgebra& tgt = f.target();
  for (const auto& g : src.generators()) {
    if (g.degree > cutoff) continue;
    const Element& img = f.image(g.id);
    if (!tgt.is_homogeneous(img, g.degree)) {
      report.violations.push_back({Violation::Kind::DegreeMismatch, g.id, g.name,
                                   "image " + to_string(tgt, img) + " is not of degree " +
                                       std::to_string(g.degree)});
      continue;
    }
    Element lhs = f.apply(src.differential(g.id));
    Element rhs = tgt.d(img);
    if (lhs != rhs)
      report.violations.push_back({Violation::Kind::NotChainMap, g.id, g.name,
                                   "f(d " + g.name + ") = " + to_string(tgt, lhs) +
                                       " but d f(" + g.name + ") = " + to_string(tgt, rhs)});
  }
  return report;
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q.get_num();
  if (q.get_den() != 1) os << '/' << q.get_den();
  return os.str();
}

std::string to_string(const DGAlgebra& a, const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string s;
  for (const auto& f : m.factors()) {
    if (!s.empty()) s += '*';
    s += a.generator(f.generator).name;
    if (f.exponent > 1) s += '^' + std::to_string(f.exponent);
  }
  return s;
}

std::string to_string(const DGAlgebra& a, const Element& e) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += '-';
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_unit()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + '*';
      s += to_string(a, m);
    }
  }
  return s;
}

Element transport(const DGAlgebra& from, const Element& e, const DGAlgebra& to) {
  std::vector<Element> images;
  images.reserve(from.size());
  for (const auto& g : from.generators()) images.push_back(to.gen(g.name));
  // Degrees must agree for the result to be meaningful; Morphism does not check it.
  return Morphism(from, to, std::move(images)).apply(e);
}

DGAlgebra reorder(const DGAlgebra& a, std::span<const GeneratorId> order) {
  if (order.size() != a.size()) throw InvalidInput("reorder: not a permutation");
  std::vector<GeneratorId> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw InvalidInput("reorder: not a permutation");
  DGAlgebra out;
  for (GeneratorId g : order) out.add_generator(a.generator(g).name, a.generator(g).degree);
  for (const auto& g : a.generators())
    out.set_differential(out.id_of(g.name), transport(a, a.differential(g.id), out));
  return out;
}

}  // namespace sullivan
