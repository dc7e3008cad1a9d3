#pragma once

#include "adaptive.hpp"
#include "cli.hpp"
#include "error.hpp"
#include "fock.hpp"
#include "format.hpp"
#include "hausdorff.hpp"
#include "measure.hpp"
#include "measure_io.hpp"
#include "quad.hpp"
#include "random.hpp"
#include "report.hpp"
#include "special.hpp"
#include "taylor.hpp"
#include "verify.hpp"
