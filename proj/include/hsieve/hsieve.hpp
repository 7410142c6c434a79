#pragma once

#include "hsieve/bits.hpp"
#include "hsieve/cache.hpp"
#include "hsieve/core.hpp"
#include "hsieve/equivalence.hpp"
#include "hsieve/errors.hpp"
#include "hsieve/goldbach.hpp"
#include "hsieve/plot.hpp"
#include "hsieve/sieve.hpp"
#include "hsieve/table.hpp"
#include "hsieve/util.hpp"
#include "hsieve/verify.hpp"
