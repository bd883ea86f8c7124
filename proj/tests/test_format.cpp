#include "doctest.h"
#include "fixtures.hpp"
#include "sullivan/format.hpp"

using namespace sullivan;

namespace {

std::size_t error_column(std::string_view text, std::size_t* line = nullptr) {
  try {
    parse_dga(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.column();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse_dga basics") {
  ParsedFile s2 = parse_dga("gen a 2\ngen b 3\nd b = a^2");
  CHECK_FALSE(s2.is_fibration());
  CHECK(s2.algebra == fixtures::s2());

  ParsedFile f = parse_dga("gen x 3\nfiber v 2 stage 0\nd v = x");
  REQUIRE(f.is_fibration());
  CHECK(f.fibration->base_size() == 1);
  CHECK(f.fibration->fiber_size() == 1);
  CHECK(f.fibration->total().differential(1) == f.algebra.gen("x"));

  // comments, blank lines, d before declaration, fiber before gen
  ParsedFile g = parse_dga(
      "# hopf\n"
      "d x = a   # kills a\n"
      "\n"
      "fiber x 1 stage 0\n"
      "gen a 2\n"
      "gen b 3\n"
      "d b = 1*a*a\n");
  CHECK(g.fibration->total() == fixtures::hopf());
  CHECK(g.fibration->base() == fixtures::s2());
}

TEST_CASE("parse_element") {
  DGAlgebra a = fixtures::hopf();
  CHECK(parse_element(a, "-a*x + 1/2 * a^2") ==
        a.power(a.gen("a"), 2) * Rational(1, 2) - a.multiply(a.gen("a"), a.gen("x")));
  CHECK(parse_element(a, "x*x").is_zero());
  CHECK(parse_element(a, "x*a") == a.multiply(a.gen("a"), a.gen("x")));
  CHECK(parse_element(a, "b*x") == -a.multiply(a.gen("x"), a.gen("b")));
  CHECK(parse_element(a, "3") == Element(Rational(3)));
  CHECK(parse_element(a, "0").is_zero());
  CHECK(parse_element(a, "2/4*a") == a.gen("a") * Rational(1, 2));
}

TEST_CASE("parse errors carry positions") {
  std::size_t line = 0;
  CHECK(error_column("gen a 2\ngen b 3\nd b = a", &line) == 7);
  CHECK(line == 3);
  CHECK(error_column("gen a 2\ngen b 3\nd b = a ^ 2 + c", &line) == 15);
  CHECK(error_column("gen a 2 3") == 9);
  CHECK(error_column("gen a") == 6);
  CHECK(error_column("gen a 0") == 5);
  CHECK(error_column("gen a 2\ngen a 3", &line) == 5);
  CHECK(line == 2);
  CHECK(error_column("gen a 2\nd a = 1/0*a") == 9);
  CHECK(error_column("gen a 2\nd a = a $") == 9);
  CHECK(error_column("gen a 2\nd a =") == 6);
  CHECK(error_column("gen a 2\nd a = a a") == 9);
  CHECK(error_column("gne a 2") == 1);
  CHECK(error_column("fiber v 2 stag 0") == 11);
  CHECK(error_column("gen a 2\ngen b 3\nd b = a^2\nd b = a^2", &line) == 3);
  CHECK(line == 4);
  // the base may not depend on the fiber
  CHECK(error_column("gen a 2\nfiber t 3 stage 0\ngen b 4\nd b = t*t + a*a") == 7);
  CHECK(error_column("gen a 2\ngen b 3\nd b = a^2") == 0);
  CHECK_THROWS_AS(read_dga_file("/nonexistent/file.dga"), InvalidInput);
}

TEST_CASE("print round trip") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    DGAlgebra a = fixtures::random_dga(rng, 5, 5);
    ParsedFile p = parse_dga(print_dga(a));
    CHECK(p.algebra == a);
    CHECK(print_dga(p.algebra) == print_dga(a));
  }

  DGAlgebra x = fixtures::sphere(3);
  Fibration f = Fibration::trivial(x).with_fiber_generator("v", 2, x.gen("x"), 0);
  f = f.with_fiber_generator("w", 5, Element{}, 2);
  std::string text = print_dga(f);
  CHECK(text == "gen x 3\nfiber v 2 stage 0\nfiber w 5 stage 2\nd v = x\n");
  ParsedFile p = parse_dga(text);
  REQUIRE(p.is_fibration());
  CHECK(p.fibration->total() == f.total());
  CHECK(p.fibration->stages() == f.stages());
}
