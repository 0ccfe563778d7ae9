#pragma once

#include "cavityduet/analytic_propagator.hpp"
#include "cavityduet/cli.hpp"
#include "cavityduet/config.hpp"
#include "cavityduet/csv.hpp"
#include "cavityduet/errors.hpp"
#include "cavityduet/exact_propagator.hpp"
#include "cavityduet/observables.hpp"
#include "cavityduet/params.hpp"
#include "cavityduet/sector_basis.hpp"
#include "cavityduet/svg.hpp"
#include "cavityduet/wei_norman.hpp"
