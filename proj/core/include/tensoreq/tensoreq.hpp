#pragma once

#include "tensoreq/error.hpp"
#include "tensoreq/imaging_io.hpp"
#include "tensoreq/oracle.hpp"
#include "tensoreq/parallel.hpp"
#include "tensoreq/random.hpp"
#include "tensoreq/solvers.hpp"
#include "tensoreq/spectral.hpp"
#include "tensoreq/tensor3.hpp"
#include "tensoreq/tproduct.hpp"
