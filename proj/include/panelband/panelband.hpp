#pragma once

// Umbrella header: simultaneous inference for panels of functional time
// series. Multiplier block-bootstrap simultaneous confidence bands, a
// family-wise parallelism test, minimum-volatility block selection,
// PAR/PMA panel simulators, and local linear smoothing of raw records.

#include "panelband/block.hpp"
#include "panelband/bootstrap.hpp"
#include "panelband/cosine.hpp"
#include "panelband/errors.hpp"
#include "panelband/experiments.hpp"
#include "panelband/grid.hpp"
#include "panelband/ingest.hpp"
#include "panelband/io.hpp"
#include "panelband/jscb.hpp"
#include "panelband/moments.hpp"
#include "panelband/mv.hpp"
#include "panelband/panel.hpp"
#include "panelband/parallel.hpp"
#include "panelband/parallelism.hpp"
#include "panelband/rng.hpp"
#include "panelband/simulate.hpp"

namespace panelband {
inline const char* version() {
#ifdef PANELBAND_VERSION
  return PANELBAND_VERSION;
#else
  return "dev";
#endif
}
}  // namespace panelband
