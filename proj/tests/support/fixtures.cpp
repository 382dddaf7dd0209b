#include "fixtures.hpp"

namespace dcmon::testing {

dc::TimedTrace unit_lifespan_trace() {
  dc::TraceBuilder b({{"I"}, {"M"}, {"E1"}, {"E2"}, {"E3"}, {"E4"}, {"E5"}});
  b.set(0, "I", 1).set(0, "E1", 1);
  b.set(1, "E1", 0).set(1, "E2", 1);
  b.set(2, "E2", 0).set(2, "E1", 1);
  b.set(3, "E1", 0).set(3, "E3", 1);
  b.set(4, "E3", 0).set(4, "E4", 1);
  b.set(5, "E4", 0).set(5, "I", 0).set(5, "M", 1).set(5, "E5", 1);
  return b.build(6);
}

}  // namespace dcmon::testing
