#pragma once

#include "planarmap/error.hpp"
#include "planarmap/field.hpp"
#include "planarmap/unipoly.hpp"
#include "planarmap/matrix.hpp"
#include "planarmap/monomial.hpp"
#include "planarmap/mpoly.hpp"
#include "planarmap/io.hpp"
#include "planarmap/groebner.hpp"
#include "planarmap/zerodim.hpp"
#include "planarmap/curvetools.hpp"
#include "planarmap/linnorm.hpp"
#include "planarmap/veronese.hpp"
#include "planarmap/verpar.hpp"
#include "planarmap/degree2.hpp"
#include "planarmap/pipeline.hpp"
