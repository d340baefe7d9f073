#pragma once

#include "eqaff/errors.hpp"
#include "eqaff/scalar.hpp"
#include "eqaff/jet.hpp"
#include "eqaff/bundle.hpp"
#include "eqaff/expr.hpp"
#include "eqaff/manifold.hpp"
#include "eqaff/curve.hpp"
#include "eqaff/quadrature.hpp"
#include "eqaff/curvature.hpp"
#include "eqaff/oracle.hpp"
#include "eqaff/scenario.hpp"
#include "eqaff/catalog.hpp"
#include "eqaff/report.hpp"
