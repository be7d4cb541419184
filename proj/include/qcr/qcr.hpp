// Umbrella header.
#pragma once

#include "qcr/core.hpp"
#include "qcr/structures.hpp"
#include "qcr/measurement.hpp"
#include "qcr/correlations.hpp"
#include "qcr/classicality.hpp"
#include "qcr/io.hpp"
#include "qcr/scenarios.hpp"
