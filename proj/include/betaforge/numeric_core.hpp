#ifndef BETAFORGE_NUMERIC_CORE_HPP
#define BETAFORGE_NUMERIC_CORE_HPP

#include <betaforge/ball_real.hpp>
#include <betaforge/constants.hpp>
#include <betaforge/integer.hpp>

#endif
