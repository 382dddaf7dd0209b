#include "dcmon/instrument/recorder.hpp"

#include "dcmon/dc/eval.hpp"
#include "dcmon/error.hpp"

namespace dcmon::instrument {

namespace {

constexpr std::size_t kI = 0;
constexpr std::size_t kM = 1;
constexpr std::size_t kE1 = 2;

}  // namespace

Tick DurationModel::draw(dca::Rng& rng) const {
  if (lo == hi) return lo;
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Tick>(rng() % span);
}

EventDurations EventDurations::fixed(Tick l1, Tick l2, Tick l3, Tick l4, Tick l5) {
  EventDurations d;
  d.events = {DurationModel::fixed(l1), DurationModel::fixed(l2), DurationModel::fixed(l3),
              DurationModel::fixed(l4), DurationModel::fixed(l5)};
  return d;
}

bool EventDurations::deterministic() const noexcept {
  for (const auto& e : events) {
    if (!e.deterministic()) return false;
  }
  return true;
}

Tick EventDurations::fixed_ticks(std::size_t index) const {
  const auto& e = events.at(index);
  if (!e.deterministic()) throw InstrumentationError("event duration is not fixed");
  return e.lo;
}

void EventDurations::validate() const {
  for (std::size_t i = 0; i < kEventCount; ++i) {
    if (events[i].lo < 1 || events[i].hi < events[i].lo) {
      throw ConfigError("duration of E" + std::to_string(i + 1) + " must be >= 1 tick with lo <= hi");
    }
  }
  if (analysis.lo < 0 || analysis.hi < analysis.lo) throw ConfigError("invalid analysis duration");
}

std::vector<dc::Observable> cell_schema() {
  return {{"I"}, {"M"}, {"E1"}, {"E2"}, {"E3"}, {"E4"}, {"E5"}};
}

TraceRecorder::TraceRecorder(RecorderConfig config, std::uint64_t stream)
    : config_(std::move(config)),
      rng_(dca::derive_rng(config_.seed, stream)),
      builder_(cell_schema(), config_.tick_seconds) {
  config_.durations.validate();
  if (config_.iteration_ticks < 1) throw ConfigError("iteration period must be >= 1 tick");
}

void TraceRecorder::run_event(std::size_t index) {
  const Tick len = config_.durations.events[index].draw(rng_);
  const Tick start = now_;
  builder_.set(start, kE1 + index, 1);
  now_ += len;
  builder_.set(now_, kE1 + index, 0);
  current_.events[index].push_back({start, now_});
}

void TraceRecorder::close_iteration() {
  if (iteration_closed_) return;
  iteration_closed_ = true;
  const Tick deadline = iteration_start_ + config_.iteration_ticks;
  if (now_ > deadline) {
    if (!config_.allow_overflow) {
      throw InstrumentationError("scheduler overflow: iteration events take " +
                                 std::to_string(now_ - iteration_start_) + " ticks, period is " +
                                 std::to_string(config_.iteration_ticks));
    }
    ++overflows_;
  } else if (config_.mode == TimingMode::WallClock) {
    now_ = deadline;
  }
  current_.immature += now_ - iteration_start_;
}

void TraceRecorder::on_event(dca::CellEvent event) {
  switch (event) {
    case dca::CellEvent::BeginIteration:
      if (!in_lifespan_) {
        in_lifespan_ = true;
        current_ = LifespanRecord{};
        current_.span.begin = now_;
      }
      iteration_start_ = now_;
      iteration_closed_ = false;
      builder_.set(now_, kI, 1);
      return;
    case dca::CellEvent::Process: run_event(0); return;
    case dca::CellEvent::Transform:
      run_event(1);
      ++current_.signals;
      return;
    case dca::CellEvent::Sample:
      run_event(2);
      ++current_.antigens;
      return;
    case dca::CellEvent::Correlate: run_event(3); return;
    case dca::CellEvent::Present: {
      close_iteration();
      builder_.set(now_, kI, 0);
      builder_.set(now_, kM, 1);
      const Tick start = now_;
      run_event(4);
      const Tick len = now_ - start;
      if (len > config_.iteration_ticks) {
        if (!config_.allow_overflow) {
          throw InstrumentationError("scheduler overflow: presentation takes " +
                                     std::to_string(len) + " ticks, period is " +
                                     std::to_string(config_.iteration_ticks));
        }
        ++overflows_;
      }
      builder_.set(now_, kM, 0);
      current_.matured = len;
      current_.span.end = now_;
      lifespans_.push_back(current_);
      in_lifespan_ = false;
      return;
    }
    case dca::CellEvent::EndIteration: close_iteration(); return;
  }
}

dc::TimedTrace TraceRecorder::trace() const { return builder_.build(now_); }

PopulationRecorder::PopulationRecorder(std::size_t cells, const RecorderConfig& config) {
  recorders_.reserve(cells);
  for (std::size_t i = 0; i < cells; ++i) recorders_.emplace_back(config, i);
}

void PopulationRecorder::on_event(std::size_t cell, dca::CellEvent event) {
  recorders_.at(cell).on_event(event);
}

Recording record_cell(const dca::CellConfig& cell_config,
                      std::span<const dca::IterationBatch> batches, const RecorderConfig& config,
                      std::uint64_t seed) {
  dca::Rng rng = dca::derive_rng(seed, 0);
  dca::Cell cell(cell_config, rng);
  PopulationRecorder recorder(1, config);
  std::vector<dca::Presentation> presentations;
  for (const auto& batch : batches) {
    dca::validate(batch);
    if (auto p = dca::run_iteration(cell, batch.signal, batch.antigens, rng, &recorder, 0)) {
      presentations.push_back(std::move(*p));
    }
  }
  return {recorder.cell(0).trace(), recorder.cell(0).lifespans(), std::move(presentations)};
}

std::vector<LifespanRecord> measure(const dc::TimedTrace& trace) {
  std::array<std::size_t, 2 + kEventCount> idx{};
  const char* names[] = {"I", "M", "E1", "E2", "E3", "E4", "E5"};
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto found = trace.find(names[k]);
    if (!found) throw InstrumentationError(std::string("trace lacks observable ") + names[k]);
    idx[k] = *found;
  }
  const auto& segs = trace.segments();
  std::vector<LifespanRecord> out;
  dc::Evaluator eval(trace);
  const dc::State immature = dc::obs("I");
  const dc::State matured = dc::obs("M");

  // Lifespan = maximal I-run followed by a maximal M-run.
  enum class Phase { Idle, Immature, Matured } phase = Phase::Idle;
  Tick begin = 0;
  auto finish = [&](Tick end) {
    LifespanRecord rec;
    rec.span = {begin, end};
    rec.immature = eval.integrate(immature, rec.span);
    rec.matured = eval.integrate(matured, rec.span);
    for (std::size_t e = 0; e < kEventCount; ++e) {
      const std::size_t obs = idx[2 + e];
      Tick run_start = -1;
      for (std::size_t s = 0; s < segs.size(); ++s) {
        const Tick s_begin = std::max(segs[s].start, begin);
        const Tick s_end = std::min(trace.segment_end(s), end);
        if (s_begin >= s_end) continue;
        if (segs[s].values[obs] == 1) {
          if (run_start < 0) run_start = s_begin;
        } else if (run_start >= 0) {
          rec.events[e].push_back({run_start, s_begin});
          run_start = -1;
        }
      }
      if (run_start >= 0) rec.events[e].push_back({run_start, end});
    }
    rec.signals = rec.events[1].size();
    rec.antigens = rec.events[2].size();
    out.push_back(std::move(rec));
  };

  for (std::size_t s = 0; s < segs.size(); ++s) {
    const bool i_on = segs[s].values[idx[kI]] == 1;
    const bool m_on = segs[s].values[idx[kM]] == 1;
    if (trace.segment_end(s) == segs[s].start) continue;
    if (i_on && m_on) {
      throw InstrumentationError("immature and matured overlap at tick " +
                                 std::to_string(segs[s].start));
    }
    switch (phase) {
      case Phase::Idle:
        if (i_on || m_on) {
          begin = segs[s].start;
          phase = i_on ? Phase::Immature : Phase::Matured;
        }
        break;
      case Phase::Immature:
        if (m_on) {
          phase = Phase::Matured;
        } else if (!i_on) {
          phase = Phase::Idle;  // immature run without presentation
        }
        break;
      case Phase::Matured:
        if (!m_on) {
          finish(segs[s].start);
          phase = Phase::Idle;
          if (i_on) {
            begin = segs[s].start;
            phase = Phase::Immature;
          }
        }
        break;
    }
  }
  if (phase == Phase::Matured) finish(trace.horizon());
  return out;
}

bool check_duration_identity(const LifespanRecord& record, const EventDurations& durations) {
  if (!durations.deterministic()) {
    throw InstrumentationError("duration identity check requires fixed event durations");
  }
  const Tick l1 = durations.fixed_ticks(0);
  const Tick l2 = durations.fixed_ticks(1);
  const Tick l3 = durations.fixed_ticks(2);
  const Tick l4 = durations.fixed_ticks(3);
  const Tick l5 = durations.fixed_ticks(4);
  const auto m = static_cast<Tick>(record.signals);
  const auto n = static_cast<Tick>(record.antigens);
  return record.immature == m * (l1 + l2) + n * (l1 + l3) + m * l4 && record.matured == l5;
}

}  // namespace dcmon::instrument
