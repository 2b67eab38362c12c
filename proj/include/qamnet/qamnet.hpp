#pragma once

#include "qamnet/analysis.hpp"
#include "qamnet/anneal.hpp"
#include "qamnet/evolve.hpp"
#include "qamnet/hamiltonian.hpp"
#include "qamnet/hopfield.hpp"
#include "qamnet/patterns.hpp"
#include "qamnet/state.hpp"
