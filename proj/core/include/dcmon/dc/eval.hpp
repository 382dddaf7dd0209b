#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcmon/dc/ast.hpp"
#include "dcmon/dc/trace.hpp"
#include "dcmon/quantity.hpp"

namespace dcmon::dc {

/// Global-variable bindings plus named finite quantifier domains.
struct Valuation {
  std::map<std::string, Quantity> bindings;
  std::map<std::string, std::vector<Quantity>> domains;

  Valuation& bind(const std::string& name, Quantity value) {
    bindings.insert_or_assign(name, std::move(value));
    return *this;
  }
  Valuation& bind(const std::string& name, double value) {
    return bind(name, Quantity::inexact(value));
  }
  /// Throws EvalError when `name` is unbound.
  const Quantity& lookup(const std::string& name) const;
};

struct EvalOptions {
  /// Absolute tolerance for predicates that involve an inexact operand.
  double tolerance = kDefaultTolerance;
};

/// Interval semantics of state assertions, terms and formulas over one trace.
///
/// Chop points range over tick boundaries. Durations are exact tick counts;
/// `len` and `int(P)` terms are scaled by the trace tick width. The evaluator
/// memoises per-assertion prefix sums, so it is cheap to reuse for many
/// intervals but must not be shared between threads.
class Evaluator {
 public:
  explicit Evaluator(const TimedTrace& trace, EvalOptions options = {});

  const TimedTrace& trace() const noexcept { return trace_; }

  /// Truth of `p` on tick cell [t, t+1).
  bool state(const State& p, Tick t) const;
  /// Exact measure (in ticks) of the set where `p` holds inside `iv`.
  Tick integrate(const State& p, Interval iv) const;
  Quantity term(const Term& t, const Valuation& v, Interval iv) const;
  bool formula(const Formula& f, const Valuation& v, Interval iv) const;

  /// Throws SchemaError if `p` mentions unknown observables or values
  /// outside their domain.
  void validate(const State& p) const;

 private:
  struct Prefix {
    State keep_alive;
    std::vector<Tick> before;  // before[i] = measure of truth in segments [0, i)
    std::vector<char> holds;   // truth per segment
  };

  void check_interval(Interval iv) const;
  bool state_on_segment(const State& p, std::size_t seg) const;
  const Prefix& prefix(const State& p) const;
  Tick cumulative(const Prefix& pre, Tick t) const;
  bool eval(const Formula& f, Valuation& v, Interval iv) const;
  Quantity eval(const Term& t, const Valuation& v, Interval iv) const;
  Quantity ticks_to_time(Tick n) const;

  const TimedTrace& trace_;
  EvalOptions options_;
  mutable std::unordered_map<const StateNode*, Prefix> prefixes_;
};

bool eval_state(const TimedTrace& trace, const State& p, Tick t);
Tick integrate(const TimedTrace& trace, const State& p, Interval iv);
Quantity eval_term(const TimedTrace& trace, const Term& t, const Valuation& v, Interval iv);
bool eval_formula(const TimedTrace& trace, const Formula& f, const Valuation& v, Interval iv,
                  EvalOptions options = {});

/// First subinterval of `iv` (ordered by begin, then end) on which `f`
/// is false, or nullopt if `f` holds on every subinterval.
std::optional<Interval> first_violation(const Evaluator& eval, const Formula& f,
                                        const Valuation& v, Interval iv);

}  // namespace dcmon::dc
