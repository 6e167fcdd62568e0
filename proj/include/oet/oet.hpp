#pragma once

// Umbrella header for the open-ended tree library.

#include "oet/errors.hpp"
#include "oet/journal.hpp"
#include "oet/visits.hpp"
#include "oet/tree.hpp"
#include "oet/list.hpp"
#include "oet/oracle.hpp"
#include "oet/complexity.hpp"
#include "oet/fuzz.hpp"
#include "oet/bench.hpp"
