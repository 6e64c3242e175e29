#pragma once

#include "error.hpp"
#include "random.hpp"
#include "graph.hpp"
#include "variation.hpp"
#include "piecewise.hpp"
#include "l1_exact.hpp"
#include "greedy.hpp"
#include "spectral.hpp"
#include "transform.hpp"
#include "io.hpp"
#include "experiment.hpp"
