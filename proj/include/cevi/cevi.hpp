#pragma once

#include "cevi/censor.hpp"
#include "cevi/core.hpp"
#include "cevi/dist.hpp"
#include "cevi/estimators.hpp"
#include "cevi/km.hpp"
#include "cevi/moments.hpp"
#include "cevi/random.hpp"
#include "cevi/special.hpp"
