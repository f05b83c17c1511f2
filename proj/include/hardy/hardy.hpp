#ifndef HARDY_HARDY_HPP
#define HARDY_HARDY_HPP

// Umbrella header for the Hardy ladder laboratory.

#include "hardy/apparatus.hpp"
#include "hardy/ladder.hpp"
#include "hardy/lhv.hpp"
#include "hardy/optimize.hpp"
#include "hardy/random.hpp"
#include "hardy/state.hpp"

#endif  // HARDY_HARDY_HPP
