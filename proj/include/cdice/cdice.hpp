#pragma once

// Umbrella header for the cdice library.

#include "cdice/error.hpp"
#include "cdice/experiment.hpp"
#include "cdice/format.hpp"
#include "cdice/metrics.hpp"
#include "cdice/phantom.hpp"
#include "cdice/presets.hpp"
#include "cdice/resample.hpp"
#include "cdice/rng.hpp"
#include "cdice/volume.hpp"
#include "cdice/volume_io.hpp"
