// geotori.hpp: convenience umbrella — pulls in the whole library.

#pragma once

#include "geotori/bifurcation.hpp"
#include "geotori/dopri5.hpp"
#include "geotori/errors.hpp"
#include "geotori/geodesic_flow.hpp"
#include "geotori/io.hpp"
#include "geotori/lift.hpp"
#include "geotori/metric_profile.hpp"
#include "geotori/quadrature.hpp"
#include "geotori/roots.hpp"
#include "geotori/selftest.hpp"
#include "geotori/shooting.hpp"
