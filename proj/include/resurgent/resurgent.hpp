#pragma once

#include "resurgent/error.hpp"
#include "resurgent/rational.hpp"
#include "resurgent/multi_index.hpp"
#include "resurgent/series.hpp"
#include "resurgent/series_json.hpp"
#include "resurgent/heisenberg.hpp"
#include "resurgent/borel.hpp"
#include "resurgent/oracles.hpp"
#include "resurgent/identities.hpp"
#include "resurgent/random.hpp"
#include "resurgent/numeric/value.hpp"
#include "resurgent/numeric/quadrature.hpp"
#include "resurgent/numeric/laplace.hpp"
#include "resurgent/numeric/integrals.hpp"
#include "resurgent/numeric/cycle.hpp"
#include "resurgent/numeric/pade.hpp"
#include "resurgent/numeric/json.hpp"
#include "resurgent/verify.hpp"
