#pragma once

#include "fqspread/error.hpp"
#include "fqspread/field.hpp"
#include "fqspread/linalg.hpp"
#include "fqspread/random.hpp"
#include "fqspread/geom.hpp"
#include "fqspread/pointset.hpp"
#include "fqspread/construct.hpp"
#include "fqspread/parallel.hpp"
#include "fqspread/census.hpp"
#include "fqspread/expt.hpp"
#include "fqspread/acceptance.hpp"
