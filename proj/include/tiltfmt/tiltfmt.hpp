#pragma once

#include "tiltfmt/chern.hpp"
#include "tiltfmt/fmt.hpp"
#include "tiltfmt/numeric.hpp"
#include "tiltfmt/oracle.hpp"
#include "tiltfmt/rng.hpp"
#include "tiltfmt/runner.hpp"
#include "tiltfmt/scenario.hpp"
#include "tiltfmt/stability.hpp"
