#pragma once

// The .dga text format.
//
//   gen <ident> <nat>
//   fiber <ident> <nat> stage <nat>
//   d <ident> = <expr>
//
//   expr     := ['-'] term (('+' | '-') term)*
//   term     := rational ['*' factor ('*' factor)*] | factor ('*' factor)*
//   factor   := ident ['^' nat]
//   rational := int ['/' nat]
//
// '#' starts a comment. Generators are created with every `gen` line before
// every `fiber` line, each group in file order; `d` lines may appear
// anywhere after the declaration they refer to is known (the whole file is
// scanned for declarations first).

#include "sullivan/fibration.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace sullivan {

// Syntax errors carry "line:column: message"; semantic errors
// (unknown names, degree mismatch, base depending on fiber) are also
// InvalidInput.
class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct ParsedFile {
  DGAlgebra algebra;                 // all generators (base then fiber)
  std::optional<Fibration> fibration;  // present iff the file has fiber lines

  [[nodiscard]] bool is_fibration() const { return fibration.has_value(); }
  // The fibration, or the algebra as a fibration with empty fiber.
  [[nodiscard]] Fibration as_fibration() const;
};

ParsedFile parse_dga(std::string_view text);
ParsedFile read_dga_file(const std::string& path);

Element parse_element(const DGAlgebra& a, std::string_view text);

std::string print_dga(const DGAlgebra& a);
std::string print_dga(const Fibration& f);

}  // namespace sullivan
