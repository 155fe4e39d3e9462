#pragma once

// Umbrella header.

#include "lonely/scalar.hpp"
#include "lonely/linalg.hpp"
#include "lonely/feasibility.hpp"
#include "lonely/cone.hpp"
#include "lonely/polytope.hpp"
#include "lonely/patch.hpp"
#include "lonely/star.hpp"
#include "lonely/indicator.hpp"
#include "lonely/analysis.hpp"
#include "lonely/substitution.hpp"
#include "lonely/svg.hpp"
