#pragma once

#include "adaptive.hpp"
#include "config.hpp"
#include "etd_step.hpp"
#include "experiments.hpp"
#include "fft.hpp"
#include "field.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "lagrange.hpp"
#include "nss.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "phi.hpp"
#include "stabilization.hpp"
#include "time_mesh.hpp"
