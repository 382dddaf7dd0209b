#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dcmon/dc/ast.hpp"
#include "dcmon/dc/eval.hpp"
#include "dcmon/dc/parser.hpp"

namespace dcmon::dc {

struct NamedFormula {
  std::string name;
  Formula formula;
};

/// Ready-to-evaluate result of loading a `.dcspec` source.
struct SpecBundle {
  std::vector<Observable> schema;
  Declarations declarations;
  Valuation valuation;
  std::vector<NamedFormula> formulas;
  /// Names selected by `check` statements; empty means "all formulas".
  std::vector<std::string> checks;

  /// Throws ParseError (line 0) when `name` is not defined.
  const Formula& formula(const std::string& name) const;
  std::vector<std::string> checked_names() const;
};

/// Loads `.dcspec` text. Statements end with a '.' token:
///
///   observable I, M, E1.            -- Boolean observables
///   observable mode in {0, 1, 2}.   -- finite-domain observable
///   global b = 11, r = 1, mbar.     -- globals, optionally bound
///   domain D = {1, 2, 3}.           -- named quantifier domain
///   define Req := [](...).          -- named formula
///   check Req, F1.                  -- default selection for monitoring
///
/// Throws ParseError on syntax errors, undeclared identifiers and duplicate
/// names.
SpecBundle load_spec(std::string_view text);

/// Text of the bundled single-cell specification (single_cell.dcspec).
std::string_view bundled_spec_text();

}  // namespace dcmon::dc
