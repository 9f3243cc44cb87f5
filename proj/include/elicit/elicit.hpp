#ifndef ELICIT_ELICIT_HPP
#define ELICIT_ELICIT_HPP

#include "elicit/catalog.hpp"
#include "elicit/core.hpp"
#include "elicit/io.hpp"
#include "elicit/regression.hpp"
#include "elicit/rng.hpp"
#include "elicit/verifier.hpp"
#include "elicit/voronoi.hpp"
#include "elicit/witness.hpp"

#endif  // ELICIT_ELICIT_HPP
