#pragma once

#include "polyverse/error.hpp"
#include "polyverse/label.hpp"
#include "polyverse/finset.hpp"
#include "polyverse/json_io.hpp"
#include "polyverse/poly.hpp"
#include "polyverse/cell.hpp"
#include "polyverse/coherence.hpp"
#include "polyverse/internal.hpp"
#include "polyverse/lift.hpp"
#include "polyverse/universe.hpp"
#include "polyverse/pseudomonad.hpp"
#include "polyverse/type_isos.hpp"
#include "polyverse/interchange.hpp"
#include "polyverse/generate.hpp"
#include "polyverse/report.hpp"
#include "polyverse/suites.hpp"
