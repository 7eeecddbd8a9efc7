#pragma once

// Umbrella header for the whole library.

#include "qca/channel.hpp"
#include "qca/correlations.hpp"
#include "qca/dense_channel.hpp"
#include "qca/histogram.hpp"
#include "qca/io.hpp"
#include "qca/linalg.hpp"
#include "qca/meanfield.hpp"
#include "qca/model.hpp"
#include "qca/ode.hpp"
#include "qca/parallel.hpp"
#include "qca/sampling.hpp"
#include "qca/tensor_network.hpp"
#include "qca/training.hpp"
#include "qca/version.hpp"
