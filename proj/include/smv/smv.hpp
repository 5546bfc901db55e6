#pragma once

#include "smv/campaign.hpp"
#include "smv/error.hpp"
#include "smv/levelset.hpp"
#include "smv/meanvalue.hpp"
#include "smv/named.hpp"
#include "smv/nelder_mead.hpp"
#include "smv/polynomial.hpp"
#include "smv/random.hpp"
#include "smv/roots.hpp"
#include "smv/search.hpp"
