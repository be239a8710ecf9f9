#pragma once

// Umbrella header: accelerated proximal-gradient solving of affinely
// constrained convex quadratics, with independent-oracle certification.

#include "fista_affine/affine.hpp"
#include "fista_affine/config.hpp"
#include "fista_affine/diagnostics.hpp"
#include "fista_affine/errors.hpp"
#include "fista_affine/experiment.hpp"
#include "fista_affine/linear_map.hpp"
#include "fista_affine/matrix.hpp"
#include "fista_affine/model_problems.hpp"
#include "fista_affine/orthonormal.hpp"
#include "fista_affine/problem.hpp"
#include "fista_affine/rng.hpp"
#include "fista_affine/solve.hpp"
#include "fista_affine/spectral.hpp"
#include "fista_affine/svd.hpp"
#include "fista_affine/t_sequence.hpp"
#include "fista_affine/vector.hpp"
