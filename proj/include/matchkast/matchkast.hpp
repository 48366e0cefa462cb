#pragma once

// Everything at once.

#include "matchkast/error.hpp"
#include "matchkast/ring.hpp"
#include "matchkast/matrix.hpp"
#include "matchkast/planar_graph.hpp"
#include "matchkast/pbg_io.hpp"
#include "matchkast/sign_function.hpp"
#include "matchkast/kasteleyn.hpp"
#include "matchkast/oracle.hpp"
#include "matchkast/report.hpp"
#include "matchkast/compound.hpp"
#include "matchkast/cpd_io.hpp"
#include "matchkast/corpus.hpp"
#include "matchkast/regions.hpp"
#include "matchkast/ciucu.hpp"
