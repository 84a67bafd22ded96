#ifndef BIREV_BIREV_HPP
#define BIREV_BIREV_HPP

#include "birev/analysis.hpp"
#include "birev/dispersion.hpp"
#include "birev/fourier.hpp"
#include "birev/hilbert.hpp"
#include "birev/piecewise.hpp"
#include "birev/revival.hpp"
#include "birev/solver.hpp"
#include "birev/zeta.hpp"

#endif  // BIREV_BIREV_HPP
