#pragma once

#include "k3tk/constructions.hpp"
#include "k3tk/errors.hpp"
#include "k3tk/isometry.hpp"
#include "k3tk/json_io.hpp"
#include "k3tk/lattice.hpp"
#include "k3tk/moduli.hpp"
#include "k3tk/narain.hpp"
#include "k3tk/numeric.hpp"
#include "k3tk/parallel.hpp"
#include "k3tk/partition.hpp"
#include "k3tk/qseries.hpp"
#include "k3tk/rational.hpp"
