#pragma once

#include "gribov/errors.hpp"
#include "gribov/numeric.hpp"
#include "gribov/params.hpp"
#include "gribov/quadrature.hpp"
#include "gribov/weights.hpp"
#include "gribov/theta.hpp"
#include "gribov/kernels.hpp"
#include "gribov/discretize.hpp"
#include "gribov/spectral.hpp"
#include "gribov/studies.hpp"
#include "gribov/csv.hpp"
#include "gribov/verify.hpp"
#include "gribov/version.hpp"
