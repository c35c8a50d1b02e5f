#pragma once
#include <doctest.h>

#include <cmath>

#include "hkforge/core.hpp"

// Relative closeness with a floor on the reference magnitude.
#define CHECK_REL(got, want, tol) CHECK(hkforge::rel_err((got), (want), 1.0) <= (tol))
#define CHECK_REL_F(got, want, tol, floor) CHECK(hkforge::rel_err((got), (want), (floor)) <= (tol))
