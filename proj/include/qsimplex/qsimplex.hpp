#pragma once

#include "qsimplex/boosting.hpp"
#include "qsimplex/classical.hpp"
#include "qsimplex/context.hpp"
#include "qsimplex/cost_model.hpp"
#include "qsimplex/error.hpp"
#include "qsimplex/instances.hpp"
#include "qsimplex/io.hpp"
#include "qsimplex/lp.hpp"
#include "qsimplex/norm_estimation.hpp"
#include "qsimplex/params.hpp"
#include "qsimplex/pricing.hpp"
#include "qsimplex/primitives.hpp"
#include "qsimplex/qlsa.hpp"
#include "qsimplex/ratio_test.hpp"
#include "qsimplex/scaled_basis.hpp"
#include "qsimplex/sign_estimation.hpp"
#include "qsimplex/simplex_iter.hpp"
#include "qsimplex/sparse.hpp"
#include "qsimplex/statevector.hpp"
#include "qsimplex/verify.hpp"
