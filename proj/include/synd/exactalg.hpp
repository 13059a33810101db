#pragma once

#include "synd/exactalg/assignment.hpp"
#include "synd/exactalg/bigrational.hpp"
#include "synd/exactalg/multipoly.hpp"
#include "synd/exactalg/poly_gcd.hpp"
#include "synd/exactalg/polymatrix.hpp"
#include "synd/exactalg/ratfunc.hpp"
