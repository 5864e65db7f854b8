#pragma once

#include "bmt.hpp"
#include "charclass.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "hilb.hpp"
#include "interval.hpp"
#include "io.hpp"
#include "quadratic.hpp"
#include "rational.hpp"
#include "stabfamily.hpp"
#include "tiltplane.hpp"
#include "walls.hpp"
