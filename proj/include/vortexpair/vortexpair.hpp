#pragma once

#include "vortexpair/bessel.hpp"
#include "vortexpair/diagnostics.hpp"
#include "vortexpair/dynamics.hpp"
#include "vortexpair/error.hpp"
#include "vortexpair/field_io.hpp"
#include "vortexpair/functionals.hpp"
#include "vortexpair/green.hpp"
#include "vortexpair/grid.hpp"
#include "vortexpair/lamb_dipole.hpp"
#include "vortexpair/maximizer.hpp"
#include "vortexpair/poisson.hpp"
#include "vortexpair/profile.hpp"
#include "vortexpair/quadrature.hpp"
#include "vortexpair/rearrangement.hpp"
