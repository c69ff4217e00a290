/// Umbrella header.
#pragma once

#include "virasoro/algebra.hpp"
#include "virasoro/analysis.hpp"
#include "virasoro/linalg.hpp"
#include "virasoro/modspec.hpp"
#include "virasoro/modules.hpp"
#include "virasoro/scalars.hpp"
#include "virasoro/serialize.hpp"
