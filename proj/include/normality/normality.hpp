#ifndef NORMALITY_NORMALITY_HPP
#define NORMALITY_NORMALITY_HPP

#include "error.hpp"
#include "rational.hpp"
#include "matrix.hpp"
#include "linalg.hpp"
#include "automaton.hpp"
#include "format.hpp"
#include "automata.hpp"
#include "spectral.hpp"
#include "weighted.hpp"
#include "construction.hpp"
#include "decision.hpp"
#include "selection.hpp"
#include "empirical.hpp"

#endif // NORMALITY_NORMALITY_HPP
