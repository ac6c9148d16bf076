#ifndef TORIC_TORIC_HPP
#define TORIC_TORIC_HPP

#include "toric/arith.hpp"
#include "toric/error.hpp"
#include "toric/ideal.hpp"
#include "toric/implicitize.hpp"
#include "toric/lattice.hpp"
#include "toric/linalg.hpp"
#include "toric/model.hpp"
#include "toric/moment.hpp"
#include "toric/patch.hpp"
#include "toric/polytope.hpp"
#include "toric/realmesh.hpp"
#include "toric/verify.hpp"

#endif // TORIC_TORIC_HPP
