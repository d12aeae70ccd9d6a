#pragma once

// Umbrella header: the whole library.

#include "majorana/canonical.hpp"
#include "majorana/chain.hpp"
#include "majorana/dot.hpp"
#include "majorana/errors.hpp"
#include "majorana/fock.hpp"
#include "majorana/io.hpp"
#include "majorana/observables.hpp"
#include "majorana/oracle_check.hpp"
#include "majorana/parallel.hpp"
#include "majorana/phase_scan.hpp"
#include "majorana/rng.hpp"
