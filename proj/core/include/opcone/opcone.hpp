#pragma once

#include "opcone/catalog.hpp"
#include "opcone/error.hpp"
#include "opcone/exact_lp.hpp"
#include "opcone/feasibility.hpp"
#include "opcone/linalg.hpp"
#include "opcone/lmi.hpp"
#include "opcone/quotient.hpp"
#include "opcone/rational.hpp"
#include "opcone/riesz.hpp"
#include "opcone/subsystem.hpp"
#include "opcone/tensor_cone.hpp"
