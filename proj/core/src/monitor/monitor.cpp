#include "dcmon/monitor/monitor.hpp"

#include <algorithm>

#include "dcmon/dc/parser.hpp"
#include "dcmon/error.hpp"

namespace dcmon::monitor {

namespace {

const char* const kDurationNames[] = {"l1", "l2", "l3", "l4", "l5"};

dc::Formula ae_obs(const char* name) { return dc::ae(dc::obs(name)); }

dc::Formula immature_phase() {
  using namespace dc;
  return conj(conj(ae_obs("I"), ae(negate(obs("E5")))),
              chop(chop(ae_obs("E1"), ae(conj(obs("E2"), negate(obs("E3"))))),
                   chop(chop(ae_obs("E1"), ae(conj(negate(obs("E2")), obs("E3")))),
                        ae_obs("E4"))));
}

dc::Formula matured_phase() {
  using namespace dc;
  State busy = disj(disj(disj(obs("E1"), obs("E2")), obs("E3")), obs("E4"));
  return conj(conj(ae_obs("M"), ae(negate(busy))), ae_obs("E5"));
}

dc::Formula requirement() {
  using namespace dc;
  Formula guard = pred(Relation::Ge, global("b"),
                       mul(add(global("mbar"), literal(Rational(1))), global("r")));
  Formula bound = pred(Relation::Le, add(duration(obs("I")), duration(obs("M"))), global("b"));
  return box(implies(guard, bound));
}

dc::Formula design1() {
  using namespace dc;
  return box(implies(ae_obs("I"), pred(Relation::Le, add(add(global("l1"), global("l2")),
                                                          global("l4")),
                                       global("r"))));
}

dc::Formula design2() {
  using namespace dc;
  return box(implies(ae_obs("M"), pred(Relation::Le, global("l5"), global("r"))));
}

Witness make_witness(const dc::Evaluator& eval, const std::string& name, dc::Interval iv,
                     const MonitorParams& params) {
  Witness w{name, iv, {}};
  w.values.emplace("int(I)", eval.term(dc::duration(dc::obs("I")), {}, iv));
  w.values.emplace("int(M)", eval.term(dc::duration(dc::obs("M")), {}, iv));
  w.values.emplace("len", eval.term(dc::length(), {}, iv));
  w.values.emplace("b", params.b);
  w.values.emplace("r", params.r);
  w.values.emplace("mbar", params.mbar);
  if (name == "Des1") w.values.emplace("l1+l2+l4", params.l[0] + params.l[1] + params.l[3]);
  if (name == "Des2") w.values.emplace("l5", params.l[4]);
  return w;
}

// Evaluates box(body) on `iv`; on failure records the first violating
// subinterval of the body.
bool check_box(const dc::Evaluator& eval, const std::string& name, const dc::Formula& f,
               const dc::Valuation& v, dc::Interval iv, const MonitorParams& params,
               std::vector<Witness>& out) {
  if (eval.formula(f, v, iv)) return true;
  auto bad = dc::first_violation(eval, f->lhs, v, iv);
  if (!bad) throw InstrumentationError("box formula failed without a violating subinterval");
  out.push_back(make_witness(eval, name, *bad, params));
  return false;
}

}  // namespace

MonitorParams MonitorParams::from_durations(const instrument::EventDurations& durations,
                                            Rational tick_seconds, Rational r, Rational mbar,
                                            Rational b) {
  MonitorParams p;
  p.b = b;
  p.r = r;
  p.mbar = mbar;
  for (std::size_t i = 0; i < instrument::kEventCount; ++i) {
    p.l[i] = Rational(durations.fixed_ticks(i)) * tick_seconds;
  }
  return p;
}

void MonitorParams::validate() const {
  if (b <= 0 || r <= 0 || mbar <= 0) throw ConfigError("b, r and mbar must be positive");
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] <= 0) throw ConfigError(std::string(kDurationNames[i]) + " must be positive");
  }
}

dc::Valuation MonitorParams::valuation() const {
  dc::Valuation v;
  v.bind("b", b).bind("r", r).bind("mbar", mbar);
  for (std::size_t i = 0; i < l.size(); ++i) v.bind(kDurationNames[i], l[i]);
  return v;
}

const dc::Formula& SingleCellSpec::get(const std::string& name) const {
  for (const auto& nf : formulas) {
    if (nf.name == name) return nf.formula;
  }
  throw ConfigError("no formula named '" + name + "'");
}

SingleCellSpec build_spec(const MonitorParams& params) {
  params.validate();
  return {{{"F1", immature_phase()},
           {"F2", matured_phase()},
           {"Des1", design1()},
           {"Des2", design2()},
           {"Req", requirement()}},
          params.valuation()};
}

TheoremVerdict check(const dc::TimedTrace& trace, const MonitorParams& params) {
  const auto lifespans = instrument::measure(trace);
  if (lifespans.empty()) throw InsufficientTraceError("trace holds no complete lifespan");
  const SingleCellSpec spec = build_spec(params);
  dc::Evaluator eval(trace);
  TheoremVerdict verdict;
  verdict.params = params;
  verdict.lifespans = lifespans.size();
  const dc::Interval whole{0, trace.horizon()};
  verdict.des1_holds =
      check_box(eval, "Des1", spec.get("Des1"), spec.valuation, whole, params, verdict.witnesses);
  verdict.des2_holds =
      check_box(eval, "Des2", spec.get("Des2"), spec.valuation, whole, params, verdict.witnesses);
  verdict.req_holds = true;
  for (const auto& rec : lifespans) {
    if (!check_box(eval, "Req", spec.get("Req"), spec.valuation, rec.span, params,
                   verdict.witnesses)) {
      verdict.req_holds = false;
      break;
    }
  }
  return verdict;
}

std::size_t ExperimentSummary::req_holds() const {
  return static_cast<std::size_t>(std::count_if(conforming.begin(), conforming.end(),
                                                [](const RunResult& r) { return r.verdict.req_holds; }));
}

std::size_t ExperimentSummary::theorem_failures() const {
  return static_cast<std::size_t>(
      std::count_if(conforming.begin(), conforming.end(), [](const RunResult& r) {
        return r.verdict.design_holds() && !r.verdict.req_holds;
      }));
}

std::size_t ExperimentSummary::des1_detected() const {
  return static_cast<std::size_t>(std::count_if(violating.begin(), violating.end(),
                                                [](const RunResult& r) { return !r.verdict.des1_holds; }));
}

std::size_t ExperimentSummary::req_violations() const {
  return static_cast<std::size_t>(std::count_if(violating.begin(), violating.end(),
                                                [](const RunResult& r) { return !r.verdict.req_holds; }));
}

std::optional<std::array<double, 3>> ExperimentSummary::slack_stats() const {
  if (conforming.empty()) return std::nullopt;
  double lo = to_double(conforming.front().slack());
  double hi = lo;
  double sum = 0.0;
  for (const auto& run : conforming) {
    const double s = to_double(run.slack());
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    sum += s;
  }
  return std::array<double, 3>{lo, sum / static_cast<double>(conforming.size()), hi};
}

namespace {

dc::Tick draw(dca::Rng& rng, dc::Tick lo, dc::Tick hi) {
  return instrument::DurationModel::uniform(lo, hi).draw(rng);
}

RunResult run_once(const ExperimentConfig& config, std::size_t index, bool violate) {
  dca::Rng rng = dca::derive_rng(config.seed, (violate ? 1ULL << 32 : 0) + index);
  const dc::Tick r = config.iteration_ticks;
  const auto mbar = static_cast<std::size_t>(draw(rng, 1, static_cast<dc::Tick>(config.max_mbar)));

  dc::Tick l1, l2, l3, l4;
  std::size_t antigens_per_iteration = 0;
  if (violate) {
    const dc::Tick total = r + r / 2;
    l1 = draw(rng, 1, total / 3);
    l2 = draw(rng, 1, total / 3);
    l4 = total - l1 - l2;
    l3 = 1;
  } else {
    l1 = draw(rng, 1, std::max<dc::Tick>(1, r / 4));
    l2 = draw(rng, 1, std::max<dc::Tick>(1, r / 4));
    l4 = draw(rng, 1, r - l1 - l2);
    l3 = draw(rng, 1, std::max<dc::Tick>(1, r / 4));
    const dc::Tick budget = r - (l1 + l2 + l4);
    const dc::Tick fit = budget / (l1 + l3);
    antigens_per_iteration = static_cast<std::size_t>(draw(rng, 0, fit));
  }
  const dc::Tick l5 = draw(rng, 1, r);

  instrument::RecorderConfig rc;
  rc.durations = instrument::EventDurations::fixed(l1, l2, l3, l4, l5);
  rc.mode = instrument::TimingMode::WallClock;
  rc.iteration_ticks = r;
  rc.tick_seconds = config.tick_seconds;
  rc.allow_overflow = violate;
  rc.seed = config.seed + index;

  dca::CellConfig cell;
  cell.threshold_lo = cell.threshold_hi = static_cast<double>(mbar);

  std::vector<dca::IterationBatch> batches;
  std::uint64_t id = 0;
  for (std::size_t k = 0; k < mbar; ++k) {
    const auto t = static_cast<double>(k);
    dca::IterationBatch batch{dca::DataInstance::make_signal(t, {0.0, 1.0, 0.0}), {}};
    for (std::size_t a = 0; a < antigens_per_iteration; ++a) {
      batch.antigens.push_back(dca::DataInstance::make_antigen(t, "probe", id++));
    }
    batches.push_back(std::move(batch));
  }
  const auto recording = instrument::record_cell(cell, batches, rc, config.seed + index);

  const Rational r_sec = Rational(r) * config.tick_seconds;
  const Rational mbar_q(static_cast<std::int64_t>(mbar));
  const Rational b = (mbar_q + 1) * r_sec;
  const auto params = MonitorParams::from_durations(rc.durations, config.tick_seconds, r_sec,
                                                    mbar_q, b);
  RunResult out;
  out.index = index;
  out.mbar = mbar;
  out.antigens = antigens_per_iteration * mbar;
  out.b = b;
  out.verdict = check(recording.trace, params);
  const auto& life = recording.lifespans.front();
  out.c = Rational(life.duration()) * config.tick_seconds;
  return out;
}

}  // namespace

ExperimentSummary realtime_experiment(const ExperimentConfig& config) {
  if (config.iteration_ticks < 4) throw ConfigError("iteration period must be at least 4 ticks");
  if (config.max_mbar < 1) throw ConfigError("max_mbar must be at least 1");
  ExperimentSummary summary;
  summary.conforming.reserve(config.runs);
  for (std::size_t i = 0; i < config.runs; ++i) {
    summary.conforming.push_back(run_once(config, i, false));
  }
  for (std::size_t i = 0; i < config.violation_runs; ++i) {
    summary.violating.push_back(run_once(config, i, true));
  }
  return summary;
}

}  // namespace dcmon::monitor
