#include "sullivan/format.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace sullivan {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : InvalidInput(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

Fibration ParsedFile::as_fibration() const {
  return fibration ? *fibration : Fibration::trivial(algebra);
}

namespace {

struct Token {
  enum Kind { Ident, Number, Symbol } kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
      out.push_back({Token::Ident, std::string(line.substr(start, i - start)), start + 1});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      out.push_back({Token::Number, std::string(line.substr(start, i - start)), start + 1});
    } else if (std::string_view("+-*/^=").find(c) != std::string_view::npos) {
      out.push_back({Token::Symbol, std::string(1, c), start + 1});
      ++i;
    } else {
      throw ParseError(lineno, start + 1, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

class ExprParser {
 public:
  ExprParser(const DGAlgebra& a, const std::vector<Token>& toks, std::size_t pos, std::size_t lineno,
             std::size_t end_column)
      : a_(a), toks_(toks), pos_(pos), line_(lineno), end_column_(end_column) {}

  Element parse() {
    Element e;
    Rational sign = 1;
    if (symbol("-")) {
      sign = -1;
      ++pos_;
    } else if (symbol("+")) {
      ++pos_;
    }
    e = term() * sign;
    while (pos_ < toks_.size()) {
      if (symbol("+")) {
        ++pos_;
        e = e + term();
      } else if (symbol("-")) {
        ++pos_;
        e = e - term();
      } else {
        fail("expected '+' or '-'");
      }
    }
    return e;
  }

 private:
  bool symbol(const char* s) const {
    return pos_ < toks_.size() && toks_[pos_].kind == Token::Symbol && toks_[pos_].text == s;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, pos_ < toks_.size() ? toks_[pos_].column : end_column_, msg);
  }

  mpz_class natural() {
    if (pos_ >= toks_.size() || toks_[pos_].kind != Token::Number) fail("expected a natural number");
    return mpz_class(toks_[pos_++].text);
  }

  Element term() {
    Element prod(Rational(1));
    if (pos_ < toks_.size() && toks_[pos_].kind == Token::Number) {
      mpz_class num = natural();
      mpz_class den = 1;
      if (symbol("/")) {
        ++pos_;
        std::size_t at = pos_;
        den = natural();
        if (den == 0) throw ParseError(line_, toks_[at].column, "zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      prod = Element(q);
      if (!symbol("*")) return prod;
      ++pos_;
    }
    prod = a_.multiply(prod, factor());
    while (symbol("*")) {
      ++pos_;
      prod = a_.multiply(prod, factor());
    }
    return prod;
  }

  Element factor() {
    if (pos_ >= toks_.size() || toks_[pos_].kind != Token::Ident) fail("expected a generator name");
    const Token& t = toks_[pos_++];
    auto id = a_.find(t.text);
    if (!id) throw ParseError(line_, t.column, "unknown generator '" + t.text + "'");
    unsigned exponent = 1;
    if (symbol("^")) {
      ++pos_;
      std::size_t at = pos_;
      mpz_class e = natural();
      if (e > 4096) throw ParseError(line_, toks_[at].column, "exponent too large");
      exponent = static_cast<unsigned>(e.get_ui());
    }
    return a_.power(a_.gen(*id), exponent);
  }

  const DGAlgebra& a_;
  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t line_;
  std::size_t end_column_;
};

struct Decl {
  std::string name;
  int degree;
  std::optional<int> stage;
  std::size_t line, column;
};

struct DLine {
  std::vector<Token> tokens;
  std::size_t line;
  std::size_t end_column;
};

int small_natural(const Token& t, std::size_t lineno, const char* what) {
  if (t.kind != Token::Number) throw ParseError(lineno, t.column, std::string("expected ") + what);
  if (t.text.size() > 6) throw ParseError(lineno, t.column, std::string(what) + " too large");
  return std::stoi(t.text);
}

}  // namespace

Element parse_element(const DGAlgebra& a, std::string_view text) {
  auto toks = tokenize(text, 1);
  if (toks.empty()) throw ParseError(1, 1, "empty expression");
  return ExprParser(a, toks, 0, 1, text.size() + 1).parse();
}

ParsedFile parse_dga(std::string_view text) {
  std::vector<Decl> base, fiber;
  std::vector<DLine> dlines;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineno;
    start = end + 1;
    auto toks = tokenize(line, lineno);
    if (toks.empty()) continue;
    const Token& kw = toks[0];
    auto need = [&](std::size_t i, const char* what) -> const Token& {
      if (i >= toks.size()) throw ParseError(lineno, line.size() + 1, std::string("expected ") + what);
      return toks[i];
    };
    auto ident = [&](std::size_t i) -> const Token& {
      const Token& t = need(i, "a generator name");
      if (t.kind != Token::Ident) throw ParseError(lineno, t.column, "expected a generator name");
      return t;
    };
    if (kw.kind == Token::Ident && kw.text == "gen") {
      const Token& name = ident(1);
      int degree = small_natural(need(2, "a degree"), lineno, "a degree");
      if (toks.size() > 3) throw ParseError(lineno, toks[3].column, "unexpected token");
      base.push_back({name.text, degree, std::nullopt, lineno, name.column});
    } else if (kw.kind == Token::Ident && kw.text == "fiber") {
      const Token& name = ident(1);
      int degree = small_natural(need(2, "a degree"), lineno, "a degree");
      const Token& st = need(3, "'stage'");
      if (st.kind != Token::Ident || st.text != "stage") throw ParseError(lineno, st.column, "expected 'stage'");
      int stage = small_natural(need(4, "a stage"), lineno, "a stage");
      if (toks.size() > 5) throw ParseError(lineno, toks[5].column, "unexpected token");
      fiber.push_back({name.text, degree, stage, lineno, name.column});
    } else if (kw.kind == Token::Ident && kw.text == "d") {
      ident(1);
      const Token& eq = need(2, "'='");
      if (eq.kind != Token::Symbol || eq.text != "=") throw ParseError(lineno, eq.column, "expected '='");
      need(3, "an expression");
      dlines.push_back({std::move(toks), lineno, line.size() + 1});
    } else {
      throw ParseError(lineno, kw.column, "expected 'gen', 'fiber' or 'd'");
    }
  }

  ParsedFile out;
  DGAlgebra& a = out.algebra;
  auto declare = [&](const Decl& d) {
    if (a.find(d.name)) throw ParseError(d.line, d.column, "duplicate generator '" + d.name + "'");
    if (d.degree < 1) throw ParseError(d.line, d.column, "generator '" + d.name + "' must have positive degree");
    a.add_generator(d.name, d.degree);
  };
  for (const auto& d : base) declare(d);
  for (const auto& d : fiber) declare(d);

  std::map<GeneratorId, std::size_t> seen;
  for (const auto& dl : dlines) {
    const Token& name = dl.tokens[1];
    auto id = a.find(name.text);
    if (!id) throw ParseError(dl.line, name.column, "unknown generator '" + name.text + "'");
    if (seen.count(*id))
      throw ParseError(dl.line, name.column,
                       "second differential for '" + name.text + "' (first on line " + std::to_string(seen[*id]) + ")");
    seen[*id] = dl.line;
    Element e = ExprParser(a, dl.tokens, 3, dl.line, dl.end_column).parse();
    const int want = a.generator(*id).degree + 1;
    if (!a.is_homogeneous(e, want))
      throw ParseError(dl.line, dl.tokens[3].column,
                       "degree mismatch: d " + name.text + " must have degree " + std::to_string(want));
    if (*id < base.size())
      for (const auto& [m, c] : e.terms())
        for (const auto& f : m.factors())
          if (f.generator >= base.size())
            throw ParseError(dl.line, dl.tokens[3].column,
                             "d " + name.text + " uses fiber generator '" + a.generator(f.generator).name + "'");
    a.set_differential(*id, e);
  }

  if (!fiber.empty()) {
    DGAlgebra b;
    for (std::size_t g = 0; g < base.size(); ++g) b.add_generator(base[g].name, base[g].degree);
    for (std::size_t g = 0; g < base.size(); ++g) b.set_differential(g, a.differential(g));
    std::vector<int> stages;
    for (const auto& d : fiber) stages.push_back(*d.stage);
    out.fibration.emplace(std::move(b), a, std::move(stages));
  }
  return out;
}

ParsedFile read_dga_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_dga(ss.str());
  } catch (const ParseError& e) {
    throw InvalidInput(path + ":" + e.what());
  }
}

namespace {

std::string d_lines(const DGAlgebra& a) {
  std::string s;
  for (const auto& g : a.generators())
    if (!a.differential(g.id).is_zero()) s += "d " + g.name + " = " + to_string(a, a.differential(g.id)) + "\n";
  return s;
}

}  // namespace

std::string print_dga(const DGAlgebra& a) {
  std::string s;
  for (const auto& g : a.generators()) s += "gen " + g.name + " " + std::to_string(g.degree) + "\n";
  return s + d_lines(a);
}

std::string print_dga(const Fibration& f) {
  std::string s;
  const DGAlgebra& t = f.total();
  for (const auto& g : t.generators()) {
    if (f.is_fiber(g.id))
      s += "fiber " + g.name + " " + std::to_string(g.degree) + " stage " + std::to_string(f.stage_of(g.id)) + "\n";
    else
      s += "gen " + g.name + " " + std::to_string(g.degree) + "\n";
  }
  return s + d_lines(t);
}

}  // namespace sullivan
