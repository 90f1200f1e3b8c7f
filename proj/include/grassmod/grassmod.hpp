#pragma once

// Umbrella header: the whole workbench in one include.

#include "grassmod/bigint.hpp"
#include "grassmod/cache.hpp"
#include "grassmod/checks.hpp"
#include "grassmod/config.hpp"
#include "grassmod/errors.hpp"
#include "grassmod/field.hpp"
#include "grassmod/gmodule.hpp"
#include "grassmod/grassmann.hpp"
#include "grassmod/incidence.hpp"
#include "grassmod/matrix.hpp"
#include "grassmod/identities.hpp"
#include "grassmod/rational.hpp"
#include "grassmod/report.hpp"
#include "grassmod/rng.hpp"
#include "grassmod/version.hpp"
