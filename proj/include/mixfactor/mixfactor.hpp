#pragma once

#include "mixfactor/dct.hpp"
#include "mixfactor/diagnostics.hpp"
#include "mixfactor/fft.hpp"
#include "mixfactor/householder.hpp"
#include "mixfactor/jacobi_svd.hpp"
#include "mixfactor/lstsq.hpp"
#include "mixfactor/matgen.hpp"
#include "mixfactor/matrix_market.hpp"
#include "mixfactor/random.hpp"
#include "mixfactor/ros.hpp"
#include "mixfactor/rurv.hpp"
#include "mixfactor/triangular.hpp"
#include "mixfactor/types.hpp"
