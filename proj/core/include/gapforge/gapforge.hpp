#pragma once

#include "gapforge/error.hpp"
#include "gapforge/finset.hpp"
#include "gapforge/gap.hpp"
#include "gapforge/generic_sim.hpp"
#include "gapforge/json_io.hpp"
#include "gapforge/ordinal.hpp"
#include "gapforge/pcc_lab.hpp"
#include "gapforge/poset_p.hpp"
#include "gapforge/poset_q.hpp"
