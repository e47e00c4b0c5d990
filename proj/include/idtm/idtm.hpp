#pragma once

#include "idtm/adomian.hpp"
#include "idtm/diagnostics.hpp"
#include "idtm/errors.hpp"
#include "idtm/nonlinearity.hpp"
#include "idtm/powerseries.hpp"
#include "idtm/solve.hpp"
#include "idtm/solver.hpp"
