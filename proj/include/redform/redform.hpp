#pragma once

#include "redform/constructions.hpp"
#include "redform/diffsys.hpp"
#include "redform/dual_number.hpp"
#include "redform/error.hpp"
#include "redform/expr.hpp"
#include "redform/gauss_rational.hpp"
#include "redform/matrix.hpp"
#include "redform/mpoly.hpp"
#include "redform/ratfunc.hpp"
#include "redform/ratsols.hpp"
#include "redform/reduction.hpp"
#include "redform/roots.hpp"
#include "redform/unipoly.hpp"
#include "redform/weinorman.hpp"
