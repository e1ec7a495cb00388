#pragma once

#include "asymptotics.hpp"
#include "core.hpp"
#include "deepest_fit.hpp"
#include "empirical_depth.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "population.hpp"
#include "predicates.hpp"
#include "sphere.hpp"
