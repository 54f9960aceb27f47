#pragma once

// Umbrella header for the whole library: distribution ingestion, Lorenz/Gini
// inequality, dual-entropy measures, occupation laws, exact configuration
// counts, the fitting pipeline, and file I/O.

#include "entrofit/combinatorics.hpp"
#include "entrofit/config.hpp"
#include "entrofit/distribution.hpp"
#include "entrofit/entropy.hpp"
#include "entrofit/error.hpp"
#include "entrofit/fit.hpp"
#include "entrofit/io.hpp"
#include "entrofit/laws.hpp"
#include "entrofit/lorenz.hpp"
#include "entrofit/numeric.hpp"
#include "entrofit/report.hpp"
