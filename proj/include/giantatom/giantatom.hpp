// giantatom.hpp - umbrella header
#pragma once

#include "closed_form.hpp"
#include "complex_linalg.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "solver.hpp"
#include "sweep.hpp"
#include "verify.hpp"
