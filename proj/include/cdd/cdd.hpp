// cdd.hpp: umbrella header for the two-qubit continuous dynamical decoupling simulator

#pragma once

#include "cdd/bath.hpp"
#include "cdd/control.hpp"
#include "cdd/errors.hpp"
#include "cdd/experiment.hpp"
#include "cdd/metrics.hpp"
#include "cdd/qubit_algebra.hpp"
#include "cdd/redfield.hpp"
#include "cdd/runner.hpp"
#include "cdd/trigamma.hpp"
