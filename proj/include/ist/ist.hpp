#pragma once

// Umbrella header: the whole library in one include.

#include "errors.hpp"
#include "spectral.hpp"
#include "model.hpp"
#include "expsum.hpp"
#include "closed_form.hpp"
#include "quadrature.hpp"
#include "ode.hpp"
#include "direct.hpp"
#include "sdata.hpp"
#include "inverse.hpp"
#include "verify.hpp"
#include "io.hpp"
#include "parallel.hpp"
