#pragma once

#include "dtm/catalog.hpp"
#include "dtm/dynamics.hpp"
#include "dtm/errors.hpp"
#include "dtm/interpolation.hpp"
#include "dtm/inverse.hpp"
#include "dtm/io.hpp"
#include "dtm/params.hpp"
#include "dtm/potential.hpp"
#include "dtm/roots.hpp"
#include "dtm/spectrum.hpp"
#include "dtm/spectrum_law.hpp"
