#pragma once

#include "qpot/dsl.hpp"
#include "qpot/errors.hpp"
#include "qpot/ginzburg.hpp"
#include "qpot/homology.hpp"
#include "qpot/ideals.hpp"
#include "qpot/linalg.hpp"
#include "qpot/path_algebra.hpp"
#include "qpot/presentation.hpp"
#include "qpot/quiver.hpp"
#include "qpot/rational.hpp"
