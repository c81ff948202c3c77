#pragma once

#include "nalip/error.hpp"
#include "nalip/valued.hpp"
#include "nalip/polynomial.hpp"
#include "nalip/tropical.hpp"
#include "nalip/projective.hpp"
#include "nalip/ratmap.hpp"
#include "nalip/berk.hpp"
#include "nalip/invariants.hpp"
#include "nalip/lipschitz.hpp"
