// phasest.hpp
// Umbrella header.

#pragma once

#include "phasest/circuits.hpp"
#include "phasest/errors.hpp"
#include "phasest/estimator.hpp"
#include "phasest/optimality.hpp"
#include "phasest/pom.hpp"
#include "phasest/report.hpp"
#include "phasest/state.hpp"
