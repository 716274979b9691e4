#ifndef BETAFORGE_BETAFORGE_HPP
#define BETAFORGE_BETAFORGE_HPP

#include <betaforge/cot_engine.hpp>
#include <betaforge/identities.hpp>
#include <betaforge/numeric_core.hpp>
#include <betaforge/series_eval.hpp>

#endif
