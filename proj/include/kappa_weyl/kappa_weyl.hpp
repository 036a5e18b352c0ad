#pragma once

#include "kappa_weyl/error.hpp"
#include "kappa_weyl/grid.hpp"
#include "kappa_weyl/radial_group.hpp"
#include "kappa_weyl/symbol.hpp"
#include "kappa_weyl/symbol_algebra.hpp"
#include "kappa_weyl/quantization.hpp"
#include "kappa_weyl/functionals.hpp"
#include "kappa_weyl/uncertainty.hpp"
