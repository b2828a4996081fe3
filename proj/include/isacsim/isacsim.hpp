// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_ISACSIM_HPP
#define ISACSIM_ISACSIM_HPP

#include "chanmodel.hpp"
#include "config.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "scheduler.hpp"
#include "sensing.hpp"
#include "simcore.hpp"
#include "units.hpp"
#include "urllc.hpp"

#endif
