#include "dcmon/dc/spec.hpp"

#include <algorithm>

#include "dcmon/error.hpp"
#include "parser_impl.hpp"

namespace dcmon::dc {

const Formula& SpecBundle::formula(const std::string& name) const {
  for (const auto& nf : formulas) {
    if (nf.name == name) return nf.formula;
  }
  throw ParseError("no formula named '" + name + "'", 0, 0);
}

std::vector<std::string> SpecBundle::checked_names() const {
  if (!checks.empty()) return checks;
  std::vector<std::string> names;
  for (const auto& nf : formulas) names.push_back(nf.name);
  return names;
}

namespace {

class SpecLoader {
 public:
  explicit SpecLoader(std::string_view text)
      : parser_(detail::tokenize(text), &bundle_.declarations) {}

  SpecBundle run() {
    while (!parser_.at(detail::Tok::End)) statement();
    return std::move(bundle_);
  }

 private:
  void claim(const detail::Token& tok, const std::string& name) {
    if (!names_.insert(name).second) parser_.fail_at(tok, "duplicate name '" + name + "'");
  }

  void statement() {
    if (parser_.at_keyword("observable")) {
      parser_.next();
      observables();
    } else if (parser_.at_keyword("global")) {
      parser_.next();
      globals();
    } else if (parser_.at_keyword("domain")) {
      parser_.next();
      domain();
    } else if (parser_.at_keyword("define")) {
      parser_.next();
      define();
    } else if (parser_.at_keyword("check")) {
      parser_.next();
      check();
    } else {
      parser_.fail("expected a statement (observable, global, domain, define, check)");
    }
    parser_.expect(detail::Tok::Dot, "to end the statement");
  }

  void observables() {
    std::vector<std::pair<detail::Token, std::string>> names;
    do {
      if (!names.empty()) parser_.next();
      detail::Token tok = parser_.peek();
      names.emplace_back(tok, parser_.identifier("as observable name"));
    } while (parser_.at(detail::Tok::Comma));
    std::vector<int> domain{0, 1};
    if (parser_.at_keyword("in")) {
      parser_.next();
      domain.clear();
      for (const Rational& r : parser_.value_list()) {
        if (r.denominator() != 1) parser_.fail("observable domains must be integers");
        domain.push_back(static_cast<int>(r.numerator()));
      }
      if (domain.empty()) parser_.fail("observable domain must not be empty");
    }
    for (auto& [tok, name] : names) {
      claim(tok, name);
      Observable o{name, domain};
      bundle_.schema.push_back(o);
      bundle_.declarations.observables.emplace(name, std::move(o));
    }
  }

  void globals() {
    do {
      if (parser_.at(detail::Tok::Comma)) parser_.next();
      detail::Token tok = parser_.peek();
      std::string name = parser_.identifier("as global name");
      claim(tok, name);
      bundle_.declarations.globals.insert(name);
      if (parser_.at(detail::Tok::Eq)) {
        parser_.next();
        bundle_.valuation.bind(name, Quantity(parser_.number("as global value")));
      }
    } while (parser_.at(detail::Tok::Comma));
  }

  void domain() {
    detail::Token tok = parser_.peek();
    std::string name = parser_.identifier("as domain name");
    claim(tok, name);
    parser_.expect(detail::Tok::Eq, "after domain name");
    std::vector<Quantity> values;
    for (const Rational& r : parser_.value_list()) values.emplace_back(r);
    bundle_.declarations.domains.insert(name);
    bundle_.valuation.domains.emplace(name, std::move(values));
  }

  void define() {
    detail::Token tok = parser_.peek();
    std::string name = parser_.identifier("as formula name");
    claim(tok, name);
    parser_.expect(detail::Tok::Assign, "after formula name");
    bundle_.formulas.push_back(NamedFormula{name, parser_.formula()});
  }

  void check() {
    do {
      if (parser_.at(detail::Tok::Comma)) parser_.next();
      detail::Token tok = parser_.peek();
      std::string name = parser_.identifier("as formula name");
      bool known = std::any_of(bundle_.formulas.begin(), bundle_.formulas.end(),
                               [&](const NamedFormula& nf) { return nf.name == name; });
      if (!known) parser_.fail_at(tok, "check of undefined formula '" + name + "'");
      bundle_.checks.push_back(name);
    } while (parser_.at(detail::Tok::Comma));
  }

  SpecBundle bundle_;
  detail::Parser parser_;
  std::set<std::string> names_;
};

}  // namespace

SpecBundle load_spec(std::string_view text) { return SpecLoader(text).run(); }

}  // namespace dcmon::dc
