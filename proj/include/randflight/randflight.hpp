#pragma once
// Umbrella include for the whole library.

#include "randflight/geometry.hpp"
#include "randflight/monte_carlo.hpp"
#include "randflight/oracles.hpp"
#include "randflight/random_stream.hpp"
#include "randflight/stats.hpp"
#include "randflight/step_distribution.hpp"
#include "randflight/verification.hpp"
