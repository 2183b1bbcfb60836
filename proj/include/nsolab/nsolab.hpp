#pragma once

#include "nsolab/core.hpp"
#include "nsolab/lab/experiment.hpp"
#include "nsolab/lab/spectrum.hpp"
#include "nsolab/lab/theorems.hpp"
#include "nsolab/linesearch.hpp"
#include "nsolab/problems/abs_linear.hpp"
#include "nsolab/problems/les_houches.hpp"
#include "nsolab/problems/mat_comp.hpp"
#include "nsolab/problems/max_cut.hpp"
#include "nsolab/problems/max_eig.hpp"
#include "nsolab/problems/sym_eig.hpp"
#include "nsolab/quasi_newton.hpp"
#include "nsolab/smoothing.hpp"
#include "nsolab/solver.hpp"
