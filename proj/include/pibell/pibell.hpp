#ifndef PIBELL_PIBELL_HPP
#define PIBELL_PIBELL_HPP

#include "bec_dynamics.hpp"
#include "dim_bounds.hpp"
#include "io.hpp"
#include "pi_polytope.hpp"
#include "su3_algebra.hpp"
#include "symmetric_rep.hpp"
#include "witnesses.hpp"

#endif
