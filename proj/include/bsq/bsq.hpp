#pragma once

#include "bsq/nadic.hpp"
#include "bsq/group.hpp"
#include "bsq/equation.hpp"
#include "bsq/expsolve.hpp"
#include "bsq/solvers.hpp"
#include "bsq/reductions.hpp"
#include "bsq/record.hpp"
