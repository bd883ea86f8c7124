// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.

#include "fixtures.hpp"
#include "oracle.hpp"
#include "sullivan/cli.hpp"
#include "sullivan/format.hpp"
#include "sullivan/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <unistd.h>

using namespace sullivan;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kHopfSeconds = 1.0;
constexpr double kCp2Seconds = 1.0;
constexpr double kBouquetSeconds = 30.0;
constexpr double kSweepSeconds = 600.0;
constexpr int kRandomKernelBases = 10;
constexpr int kPropertyCases = 1000;
constexpr int kTowerStageBound = 6;

struct Result {
  bool pass = true;
  std::string detail;
};

struct Failures {
  std::vector<std::string> messages;
  void check(bool ok, const std::string& what) {
    if (!ok && messages.size() < 5) messages.push_back(what);
    if (!ok) ++count;
  }
  std::size_t count = 0;
  Result result(const std::string& detail) const {
    if (count == 0) return {true, detail};
    std::string s = std::to_string(count) + " failure(s):";
    for (const auto& m : messages) s += " [" + m + "]";
    return {false, s};
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

DGAlgebra cp2_s5() {
  DGAlgebra a = fixtures::cp2();
  a.add_generator("x", 1, a.gen("a"));
  return a;
}

std::vector<std::size_t> point_mass(int max, std::initializer_list<int> degrees) {
  std::vector<std::size_t> v(max + 1, 0);
  for (int d : degrees) v[d] = 1;
  return v;
}

Result betti_criterion(const DGAlgebra& a, std::initializer_list<int> ones, double limit) {
  auto t0 = std::chrono::steady_clock::now();
  auto b = betti(a, 12);
  double t = seconds_since(t0);
  auto expected = point_mass(12, ones);
  auto dense = oracle::betti(a, 12);
  bool ok = b == expected && dense == expected && t < limit;
  return {ok, "betti[0..12] = " + join(b) + "; oracle " + (dense == expected ? "agrees" : "disagrees") + "; " +
                  fmt_seconds(t) + " (limit " + fmt_seconds(limit) + ")"};
}

// Attachments for criteria 3 and 4: the two spheres plus random small bases
// with a nonzero even class.
struct AttachCase {
  std::string name;
  Fibration fib;
  int cutoff;
};

std::vector<AttachCase> attachment_cases() {
  std::vector<AttachCase> out;
  DGAlgebra s2 = fixtures::s2(), cp2 = fixtures::cp2();
  out.push_back({"S3 over S2", attach_odd_sphere(s2, {2, s2.gen("a")}).fibration, 12});
  out.push_back({"S5 over CP2", attach_odd_sphere(cp2, {2, cp2.gen("a")}).fibration, 12});
  std::mt19937 rng(20261016);
  while (static_cast<int>(out.size()) < 2 + kRandomKernelBases) {
    DGAlgebra b = fixtures::random_dga(rng, 4, 4, false);
    auto bb = betti(b, 4);
    std::vector<int> even;
    for (int n : {2, 4})
      if (bb[n] > 0) even.push_back(n);
    if (even.empty()) continue;
    int n = even[rng() % even.size()];
    Element z;
    Cochains c(b);
    for (int tries = 0; tries < 20 && (z.is_zero() || c.is_exact(z, n)); ++tries) z = fixtures::random_cocycle(b, n, rng);
    if (z.is_zero() || c.is_exact(z, n)) continue;
    out.push_back({"random base " + std::to_string(out.size() - 1), attach_odd_sphere(b, {n, z}, "t").fibration, 9});
  }
  return out;
}

Result criterion_kernel_law(const std::vector<AttachCase>& cases) {
  Failures f;
  std::size_t checked = 0;
  for (const auto& c : cases) {
    GysinReport r = gysin_verify(c.fib, c.cutoff);
    const int k2 = r.euler_degree;
    f.check(static_cast<int>(r.kernel_law.size()) == c.cutoff - k2 + 1, c.name + ": kernel law range");
    for (const auto& k : r.kernel_law) {
      f.check(k.equal, c.name + ": i = " + std::to_string(k.i));
      ++checked;
    }
    // Oracle tie-in: b_j(E) = (b_j(B) - c_j) + (b_{j-2k+1}(B) - c_{j+1}), c_j = dim H^{j-2k}(B)·e.
    auto bb = oracle::betti(c.fib.base(), c.cutoff);
    auto be = oracle::betti(c.fib.total(), c.cutoff);
    auto cup = [&](int j) -> long {
      int i = j - k2;
      return i < 0 ? 0 : static_cast<long>(r.kernel_law.at(i).cup_image_dimension);
    };
    for (int j = 0; j < c.cutoff; ++j) {
      long below = j - k2 + 1 >= 0 ? static_cast<long>(bb[j - k2 + 1]) - cup(j + 1) : 0;
      f.check(static_cast<long>(be[j]) == static_cast<long>(bb[j]) - cup(j) + below,
              c.name + ": Gysin count at degree " + std::to_string(j));
    }
  }
  return f.result(std::to_string(cases.size()) + " attachments, " + std::to_string(checked) +
                  " degrees: ker = H^i·e as subspaces; dimensions agree with oracle Betti numbers");
}

Result criterion_gysin(const std::vector<AttachCase>& cases) {
  Failures f;
  std::size_t nodes = 0;
  for (const auto& c : cases) {
    GysinReport r = gysin_verify(c.fib, c.cutoff);
    for (const auto& n : r.nodes) {
      f.check(n.exact, c.name + ": " + n.label);
      ++nodes;
    }
    f.check(!r.nodes.empty(), c.name + ": no nodes");
  }
  return f.result(std::to_string(cases.size()) + " attachments, " + std::to_string(nodes) + " nodes exact");
}

// Every killed representative has a preimage in the next stage, checked by applying d.
bool zero_map_certified(const Tower& t) {
  const DGAlgebra* prev = &t.base;
  for (const auto& st : t.stages) {
    Cochains c(st.algebra);
    for (const auto& k : st.killed) {
      Element z = transport(*prev, k.representative, st.algebra);
      auto theta = c.preimage(z, k.degree);
      if (!theta || !(st.algebra.d(*theta) == z)) return false;
    }
    if (!st.zero_map) return false;
    prev = &st.algebra;
  }
  return true;
}

Result criterion_tower() {
  Failures f;
  std::string detail;
  for (auto [name, a, cutoff] : {std::tuple{"S2", fixtures::s2(), 12}, std::tuple{"CP2", fixtures::cp2(), 9}}) {
    Tower t = build_tower(a, cutoff, kTowerStageBound);
    f.check(t.converged, std::string(name) + ": not converged");
    auto b = oracle::betti(t.last(), cutoff);
    for (int n = 2; n <= cutoff; n += 2) f.check(b[n] == 0, std::string(name) + ": oracle H^" + std::to_string(n));
    f.check(zero_map_certified(t), std::string(name) + ": zero map");
    detail += std::string(name) + " converged in " + std::to_string(t.stages.size()) + " stage(s) through " +
              std::to_string(cutoff) + "; ";
  }
  // zero map without convergence
  Tower cut = build_tower(fixtures::cp2(), 9, 1);
  f.check(!cut.converged && zero_map_certified(cut), "CP2 with one stage");
  return f.result(detail + "zero map holds at every stage, also with the bound set to 1 (bound " +
                  std::to_string(kTowerStageBound) + ")");
}

Result criterion_bouquet() {
  Failures f;
  auto t0 = std::chrono::steady_clock::now();
  MinimalModel m = bouquet_model({{{"x", 3}, {"y", 3}}}, 9);
  auto counts = m.generator_counts();
  std::map<int, std::size_t> expected{{3, 2}, {5, 1}, {7, 2}, {9, 3}};
  std::map<int, std::size_t> witt;
  for (int l = 1; l <= 4; ++l) witt[2 * l + 1] = static_cast<std::size_t>(oracle::witt(2, l));
  f.check(counts == expected, "counts");
  f.check(witt == expected, "Witt oracle");
  for (const auto& g : m.model.generators()) f.check(g.odd(), "even generator " + g.name);
  for (int n = 1; n <= 9; ++n) f.check(generator_representation(m.model, n).ok(), "H^" + std::to_string(n));
  for (int k = 1; k <= 9; k += 2) f.check(lemma_5_1_check(truncate(m.model, k)).ok(), "M_" + std::to_string(k));
  f.check(is_quasi_isomorphism(m, 9), "quasi-isomorphism");
  double t = seconds_since(t0);
  f.check(t < kBouquetSeconds, "time " + fmt_seconds(t));
  return f.result("counts 3:2 5:1 7:2 9:3 = Witt (2,1,2,3); odd only; classes represented; "
                  "H^{k+1}(M_k) = H^{k+2}(M_k) = 0 for k = 1..9 odd; " +
                  fmt_seconds(t) + " (limit " + fmt_seconds(kBouquetSeconds) + ")");
}

DGAlgebra phi5_example() {
  DGAlgebra b;
  b.add_generator("x", 3);
  b.add_generator("y", 3);
  b.add_generator("z", 5, b.multiply(b.gen("x"), b.gen("y")));
  b.add_generator("a", 2);
  b.add_generator("u", 1, b.gen("a"));
  return b;
}

Result criterion_phi_psi() {
  Failures f;
  std::size_t maps = 0;
  struct PhiCase {
    std::string name;
    DGAlgebra b;
    int n_half;
  };
  for (const auto& c : {PhiCase{"S3", fixtures::sphere(3), 2}, PhiCase{"Hopf", fixtures::hopf(), 2},
                        PhiCase{"phi5", phi5_example(), 3}}) {
    for (int k = 1; k <= 2 * c.n_half - 1; k += 2) {
      Morphism phi = build_phi_k(c.b, c.n_half, k);
      std::string tag = c.name + " k=" + std::to_string(k);
      f.check(validate_morphism(phi, 2 * c.n_half + 2).ok(), tag + ": not a chain map");
      Cochains src(phi.source()), tgt(c.b);
      for (int i = 0; i <= k; ++i) {
        SparseMatrix m = induced_map(phi, src, tgt, i);
        f.check(m.rows() == m.cols() && rank(m) == m.rows(), tag + ": H^" + std::to_string(i));
      }
      ++maps;
    }
  }

  auto psi_ok = [&](const DGAlgebra& mb, const Element& alpha, int deg, const std::string& tag) {
    PsiResult p = psi_to_sphere(mb, {deg, alpha});
    f.check(validate_morphism(p.psi, 12).ok(), tag + ": psi not a chain map");
    f.check(p.psi.apply(alpha) == p.psi.target().gen(0), tag + ": psi(alpha) != eta");
    ++maps;
  };
  DGAlgebra s3 = fixtures::sphere(3);
  psi_ok(s3, s3.gen("x"), 3, "S3");
  MinimalModel bq = bouquet_model({{{"x", 3}, {"y", 3}}}, 9);
  const DGAlgebra& mb = bq.model;
  psi_ok(mb, mb.gen("x"), 3, "bouquet x");
  psi_ok(mb, mb.gen("y"), 3, "bouquet y");
  psi_ok(mb, mb.gen("x") + mb.gen("y") * 2, 3, "bouquet x+2y");
  psi_ok(mb, mb.gen("y") * Rational(-1, 3) + mb.gen("x") * 5, 3, "bouquet 5x-y/3");
  MinimalModel m5 = minimal_model(phi5_example(), 6);
  for (const auto& rep : cohomology_basis(m5.model, 3).representatives) psi_ok(m5.model, rep, 3, "phi5 model");
  MinimalModel mh = minimal_model(fixtures::hopf(), 6);
  psi_ok(mh.model, cohomology_basis(mh.model, 3).representatives.at(0), 3, "Hopf model");
  return f.result(std::to_string(maps) +
                  " maps are chain maps; phi_k iso on H^i for i <= k; psi(alpha) = eta on every example");
}

Result criterion_engine() {
  DGAlgebra x = fixtures::sphere(3);
  Fibration fib = Fibration::trivial(x).with_fiber_generator("v", 2, x.gen("x"), 0);
  SphereEngineReport r = sphere_engine(fib, 12);
  Failures f;
  f.check(r.v.has_value(), "v");
  if (r.v) f.check(fib.total().d(*r.v) == transport(x, x.gen("x"), fib.total()), "d v = x");
  f.check(r.outcome == SphereEngineReport::Outcome::NoExactPower, "outcome " + std::string(to_string(r.outcome)));
  f.check(r.power_bound == 6, "power bound");
  f.check(r.nonzero_powers == std::vector<int>{1, 2, 3, 4, 5, 6}, "powers");
  f.check(r.fiber_even_nonzero == std::vector<int>{2, 4, 6, 8, 10, 12} && r.all_even_nonzero, "even degrees");
  auto fb = oracle::betti(algebraic_fiber(fib), 12);
  for (int n = 2; n <= 12; n += 2) f.check(fb[n] > 0, "oracle fiber H^" + std::to_string(n));
  return f.result("v found with dv = x; [v^n] != 0 for n = 1..6 at cutoff 12; fiber H^even != 0 in 2..12 (oracle agrees)");
}

Result criterion_sweep() {
  auto t0 = std::chrono::steady_clock::now();
  SearchSpace space;
  space.base = fixtures::sphere(3);
  space.fiber_degrees = {2, 3, 5};
  space.max_generators = 2;
  space.coefficient_range = 2;
  space.cutoff = 12;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  SearchReport r = search_killing_fibrations(space, {3, space.base.gen("x")}, threads);
  double t = seconds_since(t0);
  Failures f;
  for (const auto& h : r.hits)
    f.check(h.fiber.kind == ProbeVerdict::Kind::NonzeroNearCutoff, "hit " + std::to_string(h.index));
  f.check(r.finite_hits == 0, "finite hits");
  f.check(!r.hits.empty(), "no hits at all");
  f.check(t < kSweepSeconds, "time " + fmt_seconds(t));
  return f.result(std::to_string(r.enumerated) + " candidates, " + std::to_string(r.valid) + " with d^2 = 0, " +
                  std::to_string(r.hits.size()) + " kill [x], all NonzeroNearCutoff, 0 FiniteUpTo; " +
                  fmt_seconds(t) + " (limit " + fmt_seconds(kSweepSeconds) + ")");
}

Result criterion_tower_model() {
  Tower t = build_tower(fixtures::s2(), 12, kTowerStageBound);
  OddBouquetReport r = verify_odd_bouquet_model(t.last(), 9);
  MinimalModel single = bouquet_model({{{"x", 3}}}, 9);
  Failures f;
  f.check(t.converged, "tower");
  f.check(r.ok(), "report");
  f.check(r.odd_generators_only, "even generator");
  f.check(r.model.generator_counts() == single.generator_counts(), "counts");
  // Witt counts on one letter: a single Lie word
  f.check(single.generator_counts() == std::map<int, std::size_t>{{3, 1}}, "single-sphere oracle");
  return f.result("model of the S2 tower output: generators {3:1}, odd only, equals the single S3 bouquet");
}

// Criterion 11 suites

oracle::Poly to_poly(const Element& e) {
  oracle::Poly p;
  for (const auto& [m, c] : e.terms()) {
    oracle::Word w;
    for (const auto& fac : m.factors())
      for (unsigned k = 0; k < fac.exponent; ++k) w.push_back(fac.generator);
    p[w] += c;
  }
  return oracle::clean(p);
}

struct Sample {
  DGAlgebra a;
  int p, q;
  Element e, f;
};

Sample sample(std::mt19937& rng) {
  for (;;) {
    DGAlgebra a = fixtures::random_dga(rng, 4, 4);
    std::uniform_int_distribution<int> deg(1, 5);
    int p = deg(rng), q = deg(rng);
    Element e = fixtures::random_element(a, p, rng), f = fixtures::random_element(a, q, rng);
    if (!e.is_zero() && !f.is_zero()) return {std::move(a), p, q, e, f};
  }
}

Result suite_koszul() {
  std::mt19937 rng(101);
  Failures f;
  for (int i = 0; i < kPropertyCases; ++i) {
    Sample s = sample(rng);
    Element ef = s.a.multiply(s.e, s.f), fe = s.a.multiply(s.f, s.e);
    Rational sign = (s.p * s.q) % 2 ? -1 : 1;
    f.check(ef == fe * sign, "case " + std::to_string(i) + ": graded commutativity");
    f.check(to_poly(ef) == oracle::mul(oracle::from(s.a), to_poly(s.e), to_poly(s.f)), "case " + std::to_string(i) + ": oracle");
  }
  return f.result(std::to_string(kPropertyCases) + " cases: ef = (-1)^{pq} fe, products match the word oracle");
}

Result suite_leibniz() {
  std::mt19937 rng(202);
  Failures f;
  for (int i = 0; i < kPropertyCases; ++i) {
    Sample s = sample(rng);
    const DGAlgebra& a = s.a;
    Rational sign = s.p % 2 ? -1 : 1;
    Element lhs = a.d(a.multiply(s.e, s.f));
    Element rhs = a.multiply(a.d(s.e), s.f) + a.multiply(s.e, a.d(s.f)) * sign;
    f.check(lhs == rhs, "case " + std::to_string(i));
    f.check(to_poly(a.d(s.e)) == oracle::d(oracle::from(a), to_poly(s.e)), "case " + std::to_string(i) + ": oracle");
  }
  return f.result(std::to_string(kPropertyCases) + " cases: d(ef) = d(e)f + (-1)^p e d(f), d matches the oracle");
}

Result suite_d_squared() {
  std::mt19937 rng(303);
  Failures f;
  for (int i = 0; i < kPropertyCases; ++i) {
    Sample s = sample(rng);
    f.check(s.a.d(s.a.d(s.e)).is_zero(), "case " + std::to_string(i));
    oracle::Algebra o = oracle::from(s.a);
    f.check(oracle::d(o, oracle::d(o, to_poly(s.e))).empty(), "case " + std::to_string(i) + ": oracle");
    f.check(validate(s.a, 9).ok(), "case " + std::to_string(i) + ": validate");
  }
  return f.result(std::to_string(kPropertyCases) + " random elements of random DGAs: d(d e) = 0");
}

Result suite_rank_nullity() {
  std::mt19937 rng(404);
  Failures f;
  for (int i = 0; i < kPropertyCases; ++i) {
    DGAlgebra a = fixtures::random_dga(rng, 4, 4);
    int n = static_cast<int>(rng() % 8);
    SparseMatrix m = differential_matrix(a, n);
    ColumnReduction r = reduce_columns(m);
    f.check(m.cols() == r.rank() + r.kernel.rank(), "case " + std::to_string(i) + ": nullity");
    f.check(r.rank() == oracle::d_rank(oracle::from(a), n), "case " + std::to_string(i) + ": oracle rank");
    for (const auto& k : r.kernel.rows) f.check(m.apply(k).empty(), "case " + std::to_string(i) + ": kernel");
  }
  return f.result(std::to_string(kPropertyCases) + " matrices: cols = rank + nullity, rank matches dense elimination");
}

Result suite_ordering() {
  std::mt19937 rng(505);
  Failures f;
  for (int i = 0; i < kPropertyCases; ++i) {
    DGAlgebra a = fixtures::random_dga(rng, 4, 4);
    std::vector<GeneratorId> perm(a.size());
    for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto b = betti(a, 7);
    f.check(betti(reorder(a, perm), 7) == b, "case " + std::to_string(i));
    if (i % 10 == 0) f.check(oracle::betti(a, 7) == b, "case " + std::to_string(i) + ": oracle");
  }
  return f.result(std::to_string(kPropertyCases) + " random permutations leave Betti numbers through 7 unchanged");
}

Result suite_round_trip() {
  std::mt19937 rng(606);
  Failures f;
  for (int i = 0; i < kPropertyCases; ++i) {
    DGAlgebra a = fixtures::random_dga(rng, 5, 5);
    std::string text = print_dga(a);
    ParsedFile p = parse_dga(text);
    f.check(p.algebra == a && print_dga(p.algebra) == text, "algebra " + std::to_string(i));
    // as a fibration over a prefix
    std::size_t nb = rng() % a.size();
    std::vector<int> stages;
    for (std::size_t j = nb; j < a.size(); ++j) stages.push_back(static_cast<int>(rng() % 3));
    Fibration fib(prefix(a, nb), a, stages);
    ParsedFile q = parse_dga(print_dga(fib));
    f.check(q.as_fibration().total() == a && q.as_fibration().stages() == stages &&
                q.as_fibration().base_size() == nb,
            "fibration " + std::to_string(i));
    Element e = fixtures::random_element(a, 1 + static_cast<int>(rng() % 6), rng, 6);
    f.check(parse_element(a, to_string(a, e)) == e, "element " + std::to_string(i));
  }
  return f.result(std::to_string(kPropertyCases) +
                  " random algebras, fibrations and elements: parse(print(x)) = x");
}

Result suite_json() {
  Failures f;
  fs::path source = SULLIVAN_SOURCE_DIR;
  fs::path data = source / "tests" / "data";
  // golden files
  std::ifstream cases(source / "tests" / "golden" / "cases.txt");
  std::size_t goldens = 0;
  fs::path saved = fs::current_path();
  fs::current_path(data);
  for (std::string line; std::getline(cases, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    std::string name;
    int code;
    words >> name >> code;
    std::vector<std::string> args;
    for (std::string w; words >> w;) args.push_back(w);
    args.push_back("--json");
    std::ostringstream out, err;
    int got = run_cli(args, out, err);
    std::ifstream g(source / "tests" / "golden" / (name + ".json"));
    std::stringstream ss;
    ss << g.rdbuf();
    f.check(got == code && json::parse(out.str()) == json::parse(ss.str()), "golden " + name);
    ++goldens;
  }
  fs::current_path(saved);

  // randomized schema and content checks
  std::mt19937 rng(707);
  fs::path tmp = fs::temp_directory_path() / ("sullivan_acceptance_" + std::to_string(::getpid()) + ".dga");
  for (int i = 0; i < kPropertyCases; ++i) {
    DGAlgebra a = fixtures::random_dga(rng, 4, 4);
    {
      std::ofstream o(tmp);
      o << print_dga(a);
    }
    std::ostringstream out, err;
    int code = run_cli({"cohomology", tmp.string(), "--max-degree", "6", "--json"}, out, err);
    json r = json::parse(out.str());
    bool shape = code == 0 && r.size() == 4 && r["command"] == "cohomology" && r["cutoff"] == 6 &&
                 r["verdict"] == "ok" && r["data"].is_object();
    f.check(shape, "schema " + std::to_string(i));
    if (!shape) continue;
    auto b = betti(a, 6);
    const json& rows = r["data"]["cohomology"];
    bool same = rows.size() == b.size();
    for (std::size_t n = 0; same && n < b.size(); ++n)
      same = rows[n]["degree"] == n && rows[n]["dimension"] == b[n] && rows[n]["representatives"].size() == b[n];
    f.check(same, "content " + std::to_string(i));
    f.check(json::parse(r.dump(2)) == r, "dump " + std::to_string(i));
  }
  fs::remove(tmp);
  return f.result(std::to_string(goldens) + " golden reports match; " + std::to_string(kPropertyCases) +
                  " random reports carry {command, cutoff, verdict, data} and the library Betti numbers");
}

Result criterion_properties() {
  struct Suite {
    const char* name;
    std::function<Result()> run;
  };
  const Suite suites[] = {{"koszul", suite_koszul},         {"leibniz", suite_leibniz},
                          {"d^2", suite_d_squared},         {"rank-nullity", suite_rank_nullity},
                          {"ordering", suite_ordering},     {"round-trip", suite_round_trip},
                          {"json", suite_json}};
  bool all = true;
  std::string detail;
  for (const auto& s : suites) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = s.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "      " << (r.pass ? "ok   " : "FAIL ") << s.name << ": " << r.detail << " ("
              << fmt_seconds(seconds_since(t0)) << ")\n";
    all = all && r.pass;
    detail += std::string(s.name) + (r.pass ? " ok; " : " FAILED; ");
  }
  return {all, detail + std::to_string(kPropertyCases) + " cases each"};
}

}  // namespace

int main() {
  std::vector<AttachCase> attachments;
  struct Criterion {
    int id;
    const char* title;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Hopf total space Betti numbers", [] { return betti_criterion(fixtures::hopf(), {0, 3}, kHopfSeconds); }},
      {2, "S5 over CP2 Betti numbers", [] { return betti_criterion(cp2_s5(), {0, 5}, kCp2Seconds); }},
      {3, "kernel law for odd sphere attachments",
       [&] {
         attachments = attachment_cases();
         return criterion_kernel_law(attachments);
       }},
      {4, "Gysin exactness", [&] { return criterion_gysin(attachments); }},
      {5, "tower kills even cohomology", criterion_tower},
      {6, "bouquet model of two 3-spheres", criterion_bouquet},
      {7, "phi_k and psi maps", criterion_phi_psi},
      {8, "sphere engine on dv = x", criterion_engine},
      {9, "exhaustive sweep over Lambda(x3)", criterion_sweep},
      {10, "minimal model of the S2 tower", criterion_tower_model},
      {11, "property suites", criterion_properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "PASS" : "FAIL") << "  C" << c.id << (c.id < 10 ? " " : "") << "  " << c.title << ": "
              << r.detail << " [" << fmt_seconds(seconds_since(t0)) << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all 11 criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
