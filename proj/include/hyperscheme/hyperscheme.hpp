#ifndef HYPERSCHEME_HYPERSCHEME_HPP_
#define HYPERSCHEME_HYPERSCHEME_HPP_

#include "ball.hpp"
#include "characters.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "hypergroup.hpp"
#include "kernel_family.hpp"
#include "linalg.hpp"
#include "poly_hypergroup.hpp"
#include "random_walk.hpp"
#include "rational.hpp"
#include "scheme.hpp"

#endif  // HYPERSCHEME_HYPERSCHEME_HPP_
