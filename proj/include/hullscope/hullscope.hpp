#pragma once

#include "hullscope/arrangement.hpp"
#include "hullscope/curve.hpp"
#include "hullscope/discs.hpp"
#include "hullscope/ds.hpp"
#include "hullscope/error.hpp"
#include "hullscope/geometry.hpp"
#include "hullscope/io.hpp"
#include "hullscope/models.hpp"
#include "hullscope/normal_map.hpp"
#include "hullscope/pipeline.hpp"
#include "hullscope/preseam.hpp"
