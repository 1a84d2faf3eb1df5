#pragma once

#include "tflow/breakpoints.hpp"
#include "tflow/capacity.hpp"
#include "tflow/cut_lab.hpp"
#include "tflow/errors.hpp"
#include "tflow/expansion.hpp"
#include "tflow/feasibility.hpp"
#include "tflow/generator.hpp"
#include "tflow/io.hpp"
#include "tflow/maxflow.hpp"
#include "tflow/network.hpp"
#include "tflow/oneshot.hpp"
#include "tflow/piecewise.hpp"
#include "tflow/reductions.hpp"
#include "tflow/solvers.hpp"
