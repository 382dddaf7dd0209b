#pragma once

#include "dcmon/dc/trace.hpp"

namespace dcmon::testing {

/// One lifespan with unit event durations: E1 [0,1], E2 [1,2], E1 [2,3],
/// E3 [3,4], E4 [4,5], E5 [5,6]; I on [0,5], M on [5,6].
dc::TimedTrace unit_lifespan_trace();

}  // namespace dcmon::testing
