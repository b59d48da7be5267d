#pragma once

#include "error.hpp"
#include "random.hpp"
#include "polynomial.hpp"
#include "report.hpp"
#include "matrix_core.hpp"
#include "poly_track.hpp"
#include "block_unitary.hpp"
#include "singular_triples.hpp"
#include "qsvt_engine.hpp"
#include "qsp_reduction.hpp"
#include "subspace_lab.hpp"
#include "io.hpp"
#include "demos.hpp"
#include "suite.hpp"
