#pragma once

#include "hankelwave/compensated_sum.hpp"
#include "hankelwave/errors.hpp"
#include "hankelwave/expansion.hpp"
#include "hankelwave/function_spec.hpp"
#include "hankelwave/hankel_kernel.hpp"
#include "hankelwave/oracle.hpp"
#include "hankelwave/piecewise_poly.hpp"
#include "hankelwave/pipeline.hpp"
#include "hankelwave/quadrature.hpp"
#include "hankelwave/specfun.hpp"
#include "hankelwave/splines.hpp"
