#pragma once

#include "gausscircle/errors.hpp"
#include "gausscircle/summation.hpp"
#include "gausscircle/core_arith.hpp"
#include "gausscircle/special_functions.hpp"
#include "gausscircle/series.hpp"
#include "gausscircle/closed_forms.hpp"
#include "gausscircle/analysis.hpp"
#include "gausscircle/io.hpp"
#include "gausscircle/claims.hpp"
