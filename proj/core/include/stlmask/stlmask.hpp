#pragma once

#include "stlmask/autodiff.hpp"
#include "stlmask/bench_suite.hpp"
#include "stlmask/core.hpp"
#include "stlmask/formula.hpp"
#include "stlmask/grid.hpp"
#include "stlmask/io.hpp"
#include "stlmask/masking.hpp"
#include "stlmask/mining.hpp"
#include "stlmask/optim.hpp"
#include "stlmask/planning.hpp"
#include "stlmask/recurrent.hpp"
#include "stlmask/reference.hpp"
#include "stlmask/smoothing.hpp"
