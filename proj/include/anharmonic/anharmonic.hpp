#pragma once

#include "anharmonic/errors.hpp"
#include "anharmonic/rational.hpp"
#include "anharmonic/series.hpp"
#include "anharmonic/oscillator.hpp"
#include "anharmonic/perturbation.hpp"
#include "anharmonic/rs_oracle.hpp"
#include "anharmonic/quadrature.hpp"
#include "anharmonic/instanton.hpp"
#include "anharmonic/generalized.hpp"
#include "anharmonic/model_integral.hpp"
#include "anharmonic/spectra.hpp"
#include "anharmonic/large_order.hpp"
#include "anharmonic/dispersion.hpp"
#include "anharmonic/interchange.hpp"
