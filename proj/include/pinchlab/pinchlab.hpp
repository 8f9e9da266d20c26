#pragma once

#include "pinchlab/appendix_fixtures.hpp"
#include "pinchlab/flow.hpp"
#include "pinchlab/param_sturm.hpp"
#include "pinchlab/pinching.hpp"
#include "pinchlab/polynomial.hpp"
#include "pinchlab/rational.hpp"
#include "pinchlab/ratfunc.hpp"
#include "pinchlab/report.hpp"
#include "pinchlab/sigma.hpp"
#include "pinchlab/sturm.hpp"
#include "pinchlab/surd.hpp"
#include "pinchlab/version.hpp"
