#include "dcmon/dc/eval.hpp"

#include "dcmon/error.hpp"

namespace dcmon::dc {

const Quantity& Valuation::lookup(const std::string& name) const {
  auto it = bindings.find(name);
  if (it == bindings.end()) throw EvalError("unbound global variable '" + name + "'");
  return it->second;
}

Evaluator::Evaluator(const TimedTrace& trace, EvalOptions options)
    : trace_(trace), options_(options) {}

void Evaluator::check_interval(Interval iv) const {
  if (iv.begin < 0 || iv.begin > iv.end || iv.end > trace_.horizon()) {
    throw RangeError("interval [" + std::to_string(iv.begin) + ", " + std::to_string(iv.end) +
                     "] outside [0, " + std::to_string(trace_.horizon()) + "]");
  }
}

void Evaluator::validate(const State& p) const {
  switch (p->kind) {
    case StateKind::Const0:
    case StateKind::Const1: return;
    case StateKind::VarEq: {
      const auto& o = trace_.schema()[trace_.index_of(p->var)];
      if (!o.admits(p->value)) {
        throw SchemaError("value " + std::to_string(p->value) + " outside the domain of '" +
                          p->var + "'");
      }
      return;
    }
    case StateKind::Not: validate(p->lhs); return;
    default:
      validate(p->lhs);
      validate(p->rhs);
  }
}

bool Evaluator::state_on_segment(const State& p, std::size_t seg) const {
  switch (p->kind) {
    case StateKind::Const0: return false;
    case StateKind::Const1: return true;
    case StateKind::VarEq:
      return trace_.segments()[seg].values[trace_.index_of(p->var)] == p->value;
    case StateKind::Not: return !state_on_segment(p->lhs, seg);
    case StateKind::And: return state_on_segment(p->lhs, seg) && state_on_segment(p->rhs, seg);
    case StateKind::Or: return state_on_segment(p->lhs, seg) || state_on_segment(p->rhs, seg);
    case StateKind::Implies:
      return !state_on_segment(p->lhs, seg) || state_on_segment(p->rhs, seg);
  }
  return false;
}

bool Evaluator::state(const State& p, Tick t) const {
  validate(p);
  return state_on_segment(p, trace_.segment_at(t));
}

const Evaluator::Prefix& Evaluator::prefix(const State& p) const {
  auto it = prefixes_.find(p.get());
  if (it != prefixes_.end()) return it->second;
  validate(p);
  Prefix pre;
  pre.keep_alive = p;
  const auto n = trace_.segments().size();
  pre.before.resize(n + 1, 0);
  pre.holds.resize(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    pre.holds[i] = state_on_segment(p, i) ? 1 : 0;
    Tick len = trace_.segment_end(i) - trace_.segments()[i].start;
    pre.before[i + 1] = pre.before[i] + (pre.holds[i] ? len : 0);
  }
  return prefixes_.emplace(p.get(), std::move(pre)).first->second;
}

Tick Evaluator::cumulative(const Prefix& pre, Tick t) const {
  if (t >= trace_.horizon()) return pre.before.back();
  std::size_t seg = trace_.segment_at(t);
  Tick partial = pre.holds[seg] ? t - trace_.segments()[seg].start : 0;
  return pre.before[seg] + partial;
}

Tick Evaluator::integrate(const State& p, Interval iv) const {
  check_interval(iv);
  const Prefix& pre = prefix(p);
  if (iv.begin == iv.end) return 0;
  return cumulative(pre, iv.end) - cumulative(pre, iv.begin);
}

Quantity Evaluator::ticks_to_time(Tick n) const {
  return Quantity(Rational(n) * trace_.tick_seconds());
}

Quantity Evaluator::eval(const Term& t, const Valuation& v, Interval iv) const {
  switch (t->kind) {
    case TermKind::GlobalVar: return v.lookup(t->name);
    case TermKind::Length: return ticks_to_time(iv.length());
    case TermKind::Duration: return ticks_to_time(integrate(t->state, iv));
    case TermKind::Apply: break;
  }
  switch (t->fn) {
    case Fn::Literal: return Quantity(t->literal);
    case Fn::Add: return eval(t->args[0], v, iv) + eval(t->args[1], v, iv);
    case Fn::Sub:
      if (t->args.size() == 1) return -eval(t->args[0], v, iv);
      return eval(t->args[0], v, iv) - eval(t->args[1], v, iv);
    case Fn::Mul: return eval(t->args[0], v, iv) * eval(t->args[1], v, iv);
    case Fn::Div: return eval(t->args[0], v, iv) / eval(t->args[1], v, iv);
    case Fn::Min:
    case Fn::Max: {
      Quantity acc = eval(t->args[0], v, iv);
      for (std::size_t i = 1; i < t->args.size(); ++i) {
        Quantity next = eval(t->args[i], v, iv);
        acc = t->fn == Fn::Min ? min(acc, next) : max(acc, next);
      }
      return acc;
    }
  }
  throw EvalError("unknown function symbol");
}

Quantity Evaluator::term(const Term& t, const Valuation& v, Interval iv) const {
  check_interval(iv);
  return eval(t, v, iv);
}

bool Evaluator::formula(const Formula& f, const Valuation& v, Interval iv) const {
  check_interval(iv);
  Valuation scratch = v;
  return eval(f, scratch, iv);
}

bool Evaluator::eval(const Formula& f, Valuation& v, Interval iv) const {
  switch (f->kind) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Pred:
      return compare(f->rel, eval(f->lhs_term, v, iv), eval(f->rhs_term, v, iv),
                     options_.tolerance);
    case FormulaKind::Not: return !eval(f->lhs, v, iv);
    case FormulaKind::And: return eval(f->lhs, v, iv) && eval(f->rhs, v, iv);
    case FormulaKind::Or: return eval(f->lhs, v, iv) || eval(f->rhs, v, iv);
    case FormulaKind::Implies: return !eval(f->lhs, v, iv) || eval(f->rhs, v, iv);
    case FormulaKind::ForAll:
    case FormulaKind::Exists: {
      std::vector<Quantity> values;
      if (!f->domain.name.empty()) {
        auto it = v.domains.find(f->domain.name);
        if (it == v.domains.end()) {
          throw EvalError("undeclared quantifier domain '" + f->domain.name + "'");
        }
        values = it->second;
      } else {
        values.assign(f->domain.values.begin(), f->domain.values.end());
      }
      const bool universal = f->kind == FormulaKind::ForAll;
      auto saved = v.bindings.find(f->var) != v.bindings.end()
                       ? std::optional<Quantity>(v.bindings.at(f->var))
                       : std::nullopt;
      bool result = universal;
      for (const auto& value : values) {
        v.bindings.insert_or_assign(f->var, value);
        if (eval(f->lhs, v, iv) != universal) {
          result = !universal;
          break;
        }
      }
      if (saved) {
        v.bindings.insert_or_assign(f->var, *saved);
      } else {
        v.bindings.erase(f->var);
      }
      return result;
    }
    case FormulaKind::Chop:
      for (Tick m = iv.begin; m <= iv.end; ++m) {
        if (eval(f->lhs, v, {iv.begin, m}) && eval(f->rhs, v, {m, iv.end})) return true;
      }
      return false;
    case FormulaKind::AlmostEverywhere:
      return iv.length() > 0 && integrate(f->state, iv) == iv.length();
    case FormulaKind::Box:
      // !(true ; !F ; true) with the trivially true outer operands elided:
      // F must hold on every [m1, m2] with begin <= m1 <= m2 <= end.
      for (Tick m1 = iv.begin; m1 <= iv.end; ++m1) {
        for (Tick m2 = m1; m2 <= iv.end; ++m2) {
          if (!eval(f->lhs, v, {m1, m2})) return false;
        }
      }
      return true;
    case FormulaKind::Diamond:
      for (Tick m1 = iv.begin; m1 <= iv.end; ++m1) {
        for (Tick m2 = m1; m2 <= iv.end; ++m2) {
          if (eval(f->lhs, v, {m1, m2})) return true;
        }
      }
      return false;
    case FormulaKind::Point: return iv.length() == 0;
  }
  throw EvalError("unknown formula constructor");
}

bool eval_state(const TimedTrace& trace, const State& p, Tick t) {
  return Evaluator(trace).state(p, t);
}

Tick integrate(const TimedTrace& trace, const State& p, Interval iv) {
  return Evaluator(trace).integrate(p, iv);
}

Quantity eval_term(const TimedTrace& trace, const Term& t, const Valuation& v, Interval iv) {
  return Evaluator(trace).term(t, v, iv);
}

bool eval_formula(const TimedTrace& trace, const Formula& f, const Valuation& v, Interval iv,
                  EvalOptions options) {
  return Evaluator(trace, options).formula(f, v, iv);
}

std::optional<Interval> first_violation(const Evaluator& eval, const Formula& f,
                                        const Valuation& v, Interval iv) {
  for (Tick b = iv.begin; b <= iv.end; ++b) {
    for (Tick e = b; e <= iv.end; ++e) {
      if (!eval.formula(f, v, {b, e})) return Interval{b, e};
    }
  }
  return std::nullopt;
}

}  // namespace dcmon::dc
