#pragma once

// Multi-view binary clustering: low-rank affinity graphs per view,
// collaborated through a linear auto-encoder into one +-1 code matrix,
// clustered in Hamming space.

#include "gcae/baseline.hpp"
#include "gcae/binclust.hpp"
#include "gcae/common.hpp"
#include "gcae/config.hpp"
#include "gcae/dataset.hpp"
#include "gcae/encoder.hpp"
#include "gcae/graphs.hpp"
#include "gcae/kernel.hpp"
#include "gcae/linalg.hpp"
#include "gcae/metrics.hpp"
#include "gcae/report.hpp"
#include "gcae/rng.hpp"
