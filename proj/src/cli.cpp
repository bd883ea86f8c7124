#include "sullivan/cli.hpp"

#include "sullivan/format.hpp"
#include "sullivan/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

namespace sullivan {

namespace {

using json = nlohmann::json;

struct Options {
  std::string file;
  int max_degree = 12;
  bool json_output = false;
  unsigned threads = 1;
  std::string klass;
  std::string name = "x";
  std::string output;
  std::string bouquet;
  int max_stages = 6;
  int margin = 2;
  int power_bound = 0;
  int n_half = 0;
  std::vector<int> fiber_degrees;
  int max_generators = 1;
  int coeff_range = 1;
  std::size_t cap = 2'000'000;
};

struct Outcome {
  std::string verdict;
  int exit_code = 0;
  json data = json::object();
};

std::string str(const DGAlgebra& a, const Element& e) { return to_string(a, e); }

json generator_rows(const DGAlgebra& a, const Fibration* fib = nullptr) {
  json rows = json::array();
  for (const auto& g : a.generators()) {
    json row = {{"name", g.name}, {"degree", g.degree}, {"differential", str(a, a.differential(g.id))}};
    if (fib) row["stage"] = fib->stage_of(g.id);
    rows.push_back(row);
  }
  return rows;
}

json degree_rows(const std::vector<std::size_t>& b) {
  json rows = json::array();
  for (std::size_t n = 0; n < b.size(); ++n) rows.push_back({{"degree", n}, {"dimension", b[n]}});
  return rows;
}

json count_rows(const std::map<int, std::size_t>& counts) {
  json rows = json::array();
  for (const auto& [d, c] : counts) rows.push_back({{"degree", d}, {"count", c}});
  return rows;
}

json iso_rows(const std::vector<DegreeIso>& isos) {
  json rows = json::array();
  for (const auto& d : isos)
    rows.push_back({{"degree", d.degree},
                    {"model_dimension", d.model_dimension},
                    {"target_dimension", d.target_dimension},
                    {"isomorphism", d.isomorphism}});
  return rows;
}

json probe_json(const ProbeVerdict& p) {
  return {{"kind", std::string(to_string(p.kind))},
          {"top_degree", p.top_degree},
          {"nonzero_degrees", p.nonzero_degrees},
          {"margin", p.margin}};
}

json violation_rows(const ValidationReport& r) {
  json rows = json::array();
  for (const auto& v : r.violations)
    rows.push_back({{"generator", v.name}, {"kind", std::string(to_string(v.kind))}, {"detail", v.detail}});
  return rows;
}

CohomologyClass parse_class(const DGAlgebra& a, const std::string& text) {
  if (text.empty()) throw InvalidInput("--class is required");
  Element e = parse_element(a, text);
  if (e.is_zero()) throw InvalidInput("class '" + text + "' is zero");
  auto deg = a.degree(e);
  if (!deg) throw InvalidInput("class '" + text + "' is not homogeneous");
  if (!a.d(e).is_zero()) throw InvalidInput("class '" + text + "' is not a cocycle");
  return {*deg, e};
}

Fibration require_fibration(const ParsedFile& p) {
  if (!p.is_fibration()) throw InvalidInput("the file declares no fiber generators");
  return *p.fibration;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f || !(f << text)) throw InvalidInput("cannot write '" + path + "'");
}

// Commands

Outcome cmd_validate(const Options& o) {
  ParsedFile p = read_dga_file(o.file);
  Outcome out;
  bool ok;
  if (p.is_fibration()) {
    FibrationReport r = validate_fibration(*p.fibration, o.max_degree);
    ok = r.ok();
    out.data = {{"kind", "fibration"},
                {"violations", violation_rows(r.dga)},
                {"filtration_violations", violation_rows(r.filtration)},
                {"minimal", r.minimal},
                {"non_minimal", r.non_minimal}};
  } else {
    ValidationReport r = validate(p.algebra, o.max_degree);
    ok = r.ok();
    out.data = {{"kind", "algebra"}, {"violations", violation_rows(r)}, {"minimal", is_minimal(p.algebra)}};
  }
  out.verdict = ok ? "valid" : "invalid";
  out.exit_code = ok ? 0 : 1;
  return out;
}

Outcome cmd_cohomology(const Options& o) {
  ParsedFile p = read_dga_file(o.file);
  const DGAlgebra& a = p.algebra;
  std::vector<std::size_t> b = betti(a, o.max_degree, o.threads);
  Cochains c(a);
  json rows = json::array();
  for (int n = 0; n <= o.max_degree; ++n) {
    json reps = json::array();
    for (const auto& r : c.cohomology(n).representatives) reps.push_back(str(a, r));
    rows.push_back({{"degree", n}, {"dimension", b[n]}, {"representatives", reps}});
  }
  return {"ok", 0, {{"cohomology", rows}}};
}

Outcome cmd_attach(const Options& o) {
  ParsedFile p = read_dga_file(o.file);
  CohomologyClass beta = parse_class(p.algebra, o.klass);
  Attachment at = attach_odd_sphere(p.algebra, beta, o.name);
  const DGAlgebra& t = at.fibration.total();
  std::string text = print_dga(at.fibration);
  if (!o.output.empty()) write_file(o.output, text);
  return {"attached",
          0,
          {{"euler_degree", beta.degree},
           {"generator", t.generator(at.euler.attached_generator).name},
           {"differential", str(t, t.differential(at.euler.attached_generator))},
           {"total_betti", degree_rows(betti(t, o.max_degree, o.threads))},
           {"file", text}}};
}

Outcome cmd_gysin(const Options& o) {
  ParsedFile p = read_dga_file(o.file);
  Fibration fib = o.klass.empty() ? require_fibration(p)
                                  : attach_odd_sphere(p.algebra, parse_class(p.algebra, o.klass), o.name).fibration;
  GysinReport r = gysin_verify(fib, o.max_degree);
  json nodes = json::array();
  for (const auto& n : r.nodes) nodes.push_back({{"label", n.label}, {"degree", n.degree}, {"exact", n.exact}});
  json law = json::array();
  for (const auto& k : r.kernel_law)
    law.push_back({{"i", k.i},
                   {"kernel_dimension", k.kernel_dimension},
                   {"cup_image_dimension", k.cup_image_dimension},
                   {"equal", k.equal}});
  return {r.ok() ? "exact" : "not_exact",
          r.ok() ? 0 : 1,
          {{"euler_degree", r.euler_degree}, {"nodes", nodes}, {"kernel_law", law}}};
}

// One row per stage and one row per added generator.
std::pair<json, json> tower_rows(const Tower& t) {
  json stages = json::array();
  json gens = json::array();
  const DGAlgebra* prev = &t.base;
  for (std::size_t m = 0; m < t.stages.size(); ++m) {
    const TowerStage& st = t.stages[m];
    for (std::size_t j = 0; j < st.new_generators.size(); ++j) {
      GeneratorId g = st.new_generators[j];
      gens.push_back({{"stage", m + 1},
                      {"name", st.algebra.generator(g).name},
                      {"degree", st.algebra.generator(g).degree},
                      {"kills", str(*prev, st.killed[j].representative)}});
    }
    stages.push_back({{"stage", m + 1}, {"added", st.new_generators.size()}, {"zero_map", st.zero_map}});
    prev = &st.algebra;
  }
  return {stages, gens};
}

Outcome cmd_kill_even(const Options& o) {
  ParsedFile p = read_dga_file(o.file);
  Tower t = build_tower(p.algebra, o.max_degree, o.max_stages);
  bool zero_map = std::all_of(t.stages.begin(), t.stages.end(), [](const TowerStage& s) { return s.zero_map; });
  std::string text = print_dga(t.as_fibration());
  if (!o.output.empty()) write_file(o.output, text);
  json residual = json::array();
  for (const auto& [d, b] : t.residual_even_betti()) residual.push_back({{"degree", d}, {"dimension", b}});
  Outcome out;
  auto [stages, gens] = tower_rows(t);
  out.data = {{"stages", stages},
              {"new_generators", gens},
              {"converged", t.converged},
              {"max_stages", o.max_stages},
              {"final_betti", degree_rows(t.final_betti)},
              {"residual_even", residual},
              {"file", text}};
  if (!zero_map) {
    out.verdict = "zero_map_failed";
    out.exit_code = 1;
  } else if (!t.converged) {
    out.verdict = "not_converged";
    out.exit_code = 3;
  } else {
    out.verdict = "converged";
  }
  return out;
}

Outcome cmd_subtower(const Options& o) {
  ParsedFile p = read_dga_file(o.file);
  CohomologyClass alpha = parse_class(p.algebra, o.klass);
  Tower t = build_tower(p.algebra, std::max(o.max_degree, alpha.degree), o.max_stages);
  Cochains last(t.last());
  if (!last.is_exact(alpha.representative, alpha.degree))
    return {"not_killed", 1, {{"stages", t.stages.size()}, {"converged", t.converged}}};
  Subtower s = finite_subtower(t, alpha);
  std::string text = print_dga(s.fibration);
  if (!o.output.empty()) write_file(o.output, text);
  return {"killed",
          0,
          {{"dies_at_stage", s.dies_at_stage},
           {"generators", generator_rows(s.fibration.total(), &s.fibration)},
           {"killing_preimage", str(s.fibration.total(), s.killing_preimage)},
           {"file", text}}};
}

Outcome cmd_fiber(const Options& o) {
  Fibration fib = require_fibration(read_dga_file(o.file));
  DGAlgebra f = algebraic_fiber(fib);
  std::string text = print_dga(f);
  if (!o.output.empty()) write_file(o.output, text);
  return {"ok", 0, {{"generators", generator_rows(f)}, {"betti", degree_rows(betti(f, o.max_degree, o.threads))}}};
}

Outcome cmd_probe(const Options& o) {
  ParsedFile p = read_dga_file(o.file);
  ProbeVerdict v = p.is_fibration() ? fiber_dimension_probe(*p.fibration, o.max_degree, o.margin)
                                    : probe_cohomology(p.algebra, o.max_degree, o.margin);
  json data = probe_json(v);
  data["target"] = p.is_fibration() ? "fiber" : "algebra";
  data["betti"] = degree_rows(v.betti);
  return {std::string(to_string(v.kind)), 0, data};
}

BouquetSpec parse_bouquet(const std::string& text) {
  BouquetSpec spec;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(start, end - start);
    start = end + 1;
    auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
      throw InvalidInput("bouquet label '" + item + "' is not name:degree");
    std::string deg = item.substr(colon + 1);
    if (deg.size() > 6 || !std::all_of(deg.begin(), deg.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw InvalidInput("bouquet label '" + item + "' has a bad degree");
    spec.labels.push_back({item.substr(0, colon), std::stoi(deg)});
  }
  spec.check();
  return spec;
}

Outcome cmd_minimal_model(const Options& o) {
  MinimalModel m = [&] {
    if (!o.bouquet.empty()) {
      if (!o.file.empty()) throw InvalidInput("give either FILE or --bouquet");
      return bouquet_model(parse_bouquet(o.bouquet), o.max_degree);
    }
    if (o.file.empty()) throw InvalidInput("FILE or --bouquet is required");
    return minimal_model(read_dga_file(o.file).algebra, o.max_degree);
  }();
  auto isos = cohomology_comparison(m, o.max_degree);
  bool qi = std::all_of(isos.begin(), isos.end(), [](const DegreeIso& d) { return d.isomorphism; });
  return {qi ? "quasi_isomorphism" : "not_quasi_isomorphism",
          qi ? 0 : 1,
          {{"generators", generator_rows(m.model)},
           {"counts", count_rows(m.generator_counts())},
           {"comparison", iso_rows(isos)},
           {"minimal", is_minimal(m.model)},
           {"file", print_dga(m.model)}}};
}

Outcome cmd_compare_models(const Options& o) {
  DGAlgebra b = read_dga_file(o.file).algebra;
  int n = o.n_half > 0 ? o.n_half : o.max_degree / 2;
  ModelComparison c = compare_models(b, n);
  json labels = json::array();
  for (const auto& l : c.labels) labels.push_back({{"name", l.name}, {"degree", l.degree}});
  return {c.ok() ? "isomorphic" : "different",
          c.ok() ? 0 : 1,
          {{"n", n},
           {"model_counts", count_rows(c.model_counts)},
           {"bouquet_counts", count_rows(c.bouquet_counts)},
           {"labels", labels},
           {"counts_equal", c.counts_equal},
           {"model_quasi_isomorphism", c.model_quasi_isomorphism},
           {"bouquet_quasi_isomorphism", c.bouquet_quasi_isomorphism}}};
}

Outcome cmd_psi(const Options& o) {
  DGAlgebra b = read_dga_file(o.file).algebra;
  CohomologyClass alpha = parse_class(b, o.klass);
  PsiResult r = psi_to_sphere(b, alpha);
  const DGAlgebra& t = r.psi.target();
  json images = json::array();
  for (const auto& g : b.generators())
    images.push_back({{"generator", g.name}, {"image", str(t, r.psi.image(g.id))}});
  ValidationReport v = validate_morphism(r.psi, o.max_degree);
  return {v.ok() ? "ok" : "not_a_chain_map",
          v.ok() ? 0 : 1,
          {{"representing", b.generator(r.representing).name},
           {"combination", str(b, r.combination)},
           {"image_of_alpha", str(t, r.image_of_alpha)},
           {"images", images},
           {"violations", violation_rows(v)}}};
}

Outcome cmd_injectivity(const Options& o) {
  Fibration fib = require_fibration(read_dga_file(o.file));
  int n = o.n_half > 0 ? o.n_half : o.max_degree / 2;
  InjectivityReport r = injectivity_check(fib, n, o.max_degree, o.margin);
  json kernel = json::array();
  for (std::size_t i = 0; i < r.kernel_dimensions.size(); ++i)
    kernel.push_back({{"degree", i}, {"dimension", r.kernel_dimensions[i]}});
  json witnesses = json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"degree", w.degree},
                         {"base_class", str(fib.base(), w.base_class)},
                         {"preimage", str(fib.total(), w.preimage)}});
  json data = {{"n", n},
               {"kernel", kernel},
               {"kernel_at_2n", r.kernel_at_2n},
               {"witnesses", witnesses},
               {"fiber", probe_json(r.fiber)},
               {"consistent", r.consistent()}};
  data["even_class_degree"] = r.even_class_degree ? json(*r.even_class_degree) : json(nullptr);
  return {r.injective() ? "injective" : "not_injective", r.injective() ? 0 : 1, data};
}

json engine_json(const Fibration& fib, const SphereEngineReport& r) {
  json data = {{"outcome", std::string(to_string(r.outcome))},
               {"power_bound", r.power_bound},
               {"nonzero_powers", r.nonzero_powers},
               {"fiber_even_nonzero", r.fiber_even_nonzero},
               {"all_even_nonzero", r.all_even_nonzero},
               {"trace", r.trace}};
  data["v"] = r.v ? json(str(fib.total(), *r.v)) : json(nullptr);
  data["exact_power"] = r.exact_power ? json(*r.exact_power) : json(nullptr);
  data["replay_preimage"] =
      r.replay_preimage ? json(str(algebraic_fiber(fib), *r.replay_preimage)) : json(nullptr);
  return data;
}

Outcome cmd_sphere_engine(const Options& o) {
  Fibration fib = require_fibration(read_dga_file(o.file));
  SphereEngineReport r = sphere_engine(fib, o.max_degree, o.power_bound);
  bool found = r.outcome == SphereEngineReport::Outcome::ExactPowerFound;
  return {std::string(to_string(r.outcome)), found ? 1 : 0, engine_json(fib, r)};
}

Outcome cmd_search(const Options& o) {
  SearchSpace space;
  space.base = read_dga_file(o.file).algebra;
  space.fiber_degrees = o.fiber_degrees;
  space.max_generators = o.max_generators;
  space.coefficient_range = o.coeff_range;
  space.cutoff = o.max_degree;
  space.margin = o.margin;
  space.enumeration_cap = o.cap;
  CohomologyClass target = parse_class(space.base, o.klass);
  SearchReport r = search_killing_fibrations(space, target, o.threads);
  json hits = json::array();
  for (const auto& h : r.hits) {
    json gens = json::array();
    const DGAlgebra& t = h.fibration.total();
    for (GeneratorId g : h.fibration.fiber_generators())
      gens.push_back(t.generator(g).name + " (" + std::to_string(t.generator(g).degree) + "): d = " +
                     str(t, t.differential(g)));
    hits.push_back({{"index", h.index},
                    {"fiber_kind", std::string(to_string(h.fiber.kind))},
                    {"top_degree", h.fiber.top_degree},
                    {"generators", gens}});
  }
  bool finite = r.finite_hits > 0;
  return {finite ? "finite_hit_found" : "no_finite_hits",
          finite ? 1 : 0,
          {{"enumerated", r.enumerated}, {"valid", r.valid}, {"hits", hits}, {"finite_hits", r.finite_hits}}};
}

Outcome cmd_lift(const Options& o) {
  Fibration fib = require_fibration(read_dga_file(o.file));
  int n = o.n_half > 0 ? o.n_half : o.max_degree / 2;
  MinimalModel mm = minimal_model(fib.base(), std::max(o.max_degree, 2 * n));
  LiftResult l = lift_fibration(fib, mm, n);
  std::string text = print_dga(l.lifted);
  if (!o.output.empty()) write_file(o.output, text);
  return {l.ok() ? "ok" : "failed",
          l.ok() ? 0 : 1,
          {{"n", n},
           {"generators", generator_rows(l.lifted.total(), &l.lifted)},
           {"commutes", l.commutes},
           {"g_iso", iso_rows(l.g_iso)},
           {"file", text}}};
}

Outcome cmd_reduce(const Options& o) {
  Fibration fib = require_fibration(read_dga_file(o.file));
  CohomologyClass alpha = parse_class(fib.base(), o.klass);
  int n = o.n_half > 0 ? o.n_half : o.max_degree / 2;
  PipelineReport r = theorem_b_pipeline(fib, alpha, n);
  json coords = json::array();
  for (const auto& [i, q] : r.image_coordinates.entries()) coords.push_back({{"index", i}, {"value", to_string(q)}});
  json data = {{"n", n},
               {"pipeline_cutoff", r.cutoff},
               {"image_coordinates", coords},
               {"representing_generator", r.representing_generator},
               {"tau_kills_eta", r.tau_kills_eta},
               {"trace", r.trace}};
  data["engine"] = r.engine ? json{{"outcome", std::string(to_string(r.engine->outcome))},
                                   {"nonzero_powers", r.engine->nonzero_powers},
                                   {"all_even_nonzero", r.engine->all_even_nonzero}}
                            : json(nullptr);
  bool certified = r.verdict == PipelineReport::Verdict::Certified;
  return {std::string(to_string(r.verdict)), certified ? 0 : 1, data};
}

// Table rendering

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + cell(x);
    return s;
  }
  return v.dump();
}

bool is_row_table(const json& v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_object(); });
}

void render(const json& obj, const std::string& indent, std::ostream& out) {
  for (const auto& [key, v] : obj.items()) {
    if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
      out << indent << key << ":\n";
      std::string text = v.get<std::string>();
      std::size_t start = 0;
      while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        out << indent << "  " << text.substr(start, end - start) << "\n";
        start = end + 1;
      }
    } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const json& x) {
                 return x.is_string() && x.get<std::string>().find(' ') != std::string::npos;
               })) {
      out << indent << key << ":\n";
      for (const auto& x : v) out << indent << "  " << cell(x) << "\n";
    } else if (v.is_object()) {
      out << indent << key << ":\n";
      render(v, indent + "  ", out);
    } else if (is_row_table(v)) {
      std::vector<std::string> cols;
      for (const auto& row : v)
        for (const auto& [k, _] : row.items())
          if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
      std::sort(cols.begin(), cols.end(), [](const std::string& a, const std::string& b) {
        return std::pair(a != "degree", a) < std::pair(b != "degree", b);
      });
      std::vector<std::vector<std::string>> cells;
      std::vector<std::size_t> width;
      for (const auto& c : cols) width.push_back(c.size());
      for (const auto& row : v) {
        std::vector<std::string> r;
        for (std::size_t j = 0; j < cols.size(); ++j) {
          r.push_back(row.contains(cols[j]) ? cell(row[cols[j]]) : "");
          width[j] = std::max(width[j], r.back().size());
        }
        cells.push_back(std::move(r));
      }
      auto line = [&](const std::vector<std::string>& r) {
        std::string s = indent + "  ";
        for (std::size_t j = 0; j < r.size(); ++j)
          s += j + 1 < r.size() ? r[j] + std::string(width[j] - r[j].size() + 2, ' ') : r[j];
        out << s << "\n";
      };
      out << indent << key << ":\n";
      line(cols);
      for (const auto& r : cells) line(r);
    } else {
      out << indent << key << ": " << cell(v) << "\n";
    }
  }
}

void emit(const Options& o, const std::string& command, const Outcome& r, std::ostream& out) {
  json report = {{"command", command}, {"cutoff", o.max_degree}, {"verdict", r.verdict}, {"data", r.data}};
  if (o.json_output) {
    out << report.dump(2) << "\n";
    return;
  }
  out << "command: " << command << "\ncutoff: " << o.max_degree << "\nverdict: " << r.verdict << "\n";
  render(r.data, "", out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact rational workbench for commutative differential graded algebras"};
  app.require_subcommand(1);
  Options o;

  struct Entry {
    const char* name;
    const char* help;
    std::function<Outcome(const Options&)> run;
  };
  const std::vector<Entry> entries = {
      {"validate", "check degrees, d^2 = 0 and the fibration filtration", cmd_validate},
      {"cohomology", "Betti numbers and canonical representatives", cmd_cohomology},
      {"attach", "attach an odd sphere killing --class", cmd_attach},
      {"gysin", "Gysin exactness and the kernel law", cmd_gysin},
      {"kill-even", "tower killing even cohomology", cmd_kill_even},
      {"subtower", "finite subtower killing --class", cmd_subtower},
      {"fiber", "algebraic fiber of a fibration", cmd_fiber},
      {"probe", "finite-dimensionality probe", cmd_probe},
      {"minimal-model", "minimal model of FILE or of --bouquet", cmd_minimal_model},
      {"compare-models", "minimal model against the bouquet on the odd classes", cmd_compare_models},
      {"psi", "projection of a minimal model onto one odd sphere", cmd_psi},
      {"injectivity", "kernel of base to total cohomology below 2N", cmd_injectivity},
      {"sphere-engine", "powers of v over a single odd sphere", cmd_sphere_engine},
      {"search", "enumerate small fibrations killing --class", cmd_search},
      {"lift", "lift a fibration to the minimal model of its base", cmd_lift},
      {"reduce", "reduction of a killed class to a single odd sphere", cmd_reduce},
  };

  std::vector<CLI::App*> subs;
  for (const auto& e : entries) {
    CLI::App* s = app.add_subcommand(e.name, e.help);
    std::string name = e.name;
    auto* file = s->add_option("file", o.file, ".dga input");
    if (name != "minimal-model") file->required();
    s->add_option("--max-degree", o.max_degree, "degree cutoff")->check(CLI::Range(0, 200));
    s->add_flag("--json", o.json_output, "JSON report");
    s->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
    if (name == "attach" || name == "gysin" || name == "subtower" || name == "psi" || name == "search" ||
        name == "reduce")
      s->add_option("--class", o.klass, "class representative, e.g. \"a^2\"");
    if (name == "attach" || name == "gysin") s->add_option("--name", o.name, "name of the attached generator");
    if (name == "attach" || name == "kill-even" || name == "subtower" || name == "fiber" || name == "lift")
      s->add_option("-o,--output", o.output, "write the resulting .dga file");
    if (name == "kill-even" || name == "subtower")
      s->add_option("--max-stages", o.max_stages, "stage bound")->check(CLI::Range(0, 64));
    if (name == "probe" || name == "injectivity" || name == "search")
      s->add_option("--margin", o.margin, "probe margin")->check(CLI::Range(0, 64));
    if (name == "sphere-engine")
      s->add_option("--power-bound", o.power_bound, "largest power checked, 0 = cutoff / |v|")
          ->check(CLI::Range(0, 1000));
    if (name == "compare-models" || name == "injectivity" || name == "lift" || name == "reduce")
      s->add_option("--n", o.n_half, "N, default max-degree / 2")->check(CLI::Range(0, 100));
    if (name == "minimal-model") s->add_option("--bouquet", o.bouquet, "labels, e.g. \"x:3,y:3\"");
    if (name == "search") {
      s->add_option("--fiber-degrees", o.fiber_degrees, "allowed degrees, e.g. 2,3,5")->delimiter(',')->required();
      s->add_option("--max-generators", o.max_generators, "fiber generators")->check(CLI::Range(0, 8));
      s->add_option("--coeff-range", o.coeff_range, "coefficients in [-r, r]")->check(CLI::Range(0, 100));
      s->add_option("--cap", o.cap, "enumeration cap");
    }
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  const std::string command = entries[which].name;
  auto fail = [&](const std::string& verdict, const std::string& message, int code) {
    err << "error: " << message << "\n";
    if (o.json_output) emit(o, command, {verdict, code, {{"error", message}}}, out);
    return code;
  };
  try {
    Outcome r = entries[which].run(o);
    emit(o, command, r, out);
    return r.exit_code;
  } catch (const InvalidInput& e) {
    return fail("invalid_input", e.what(), 2);
  } catch (const ResourceBound& e) {
    return fail("resource_bound", e.what(), 3);
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"sullivan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sullivan
