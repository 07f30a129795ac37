#pragma once

#include "pspin/agreement.hpp"
#include "pspin/finite_n.hpp"
#include "pspin/ising.hpp"
#include "pspin/maximize.hpp"
#include "pspin/montecarlo.hpp"
#include "pspin/numerics.hpp"
#include "pspin/report.hpp"
#include "pspin/spherical.hpp"
#include "pspin/tensor.hpp"
#include "pspin/types.hpp"
