#pragma once

// Umbrella header: the full algorithm-equivalence toolkit.

#include "algequiv/corpus.hpp"
#include "algequiv/dsl.hpp"
#include "algequiv/equiv.hpp"
#include "algequiv/expr.hpp"
#include "algequiv/json_io.hpp"
#include "algequiv/lft.hpp"
#include "algequiv/matrix.hpp"
#include "algequiv/ratfunc.hpp"
#include "algequiv/realize.hpp"
#include "algequiv/sim.hpp"
#include "algequiv/statespace.hpp"
