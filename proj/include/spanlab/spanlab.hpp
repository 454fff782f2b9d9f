#pragma once

#include "spanlab/asymptotics.hpp"
#include "spanlab/bigint.hpp"
#include "spanlab/counting.hpp"
#include "spanlab/enumerate.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/families.hpp"
#include "spanlab/family.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/montecarlo.hpp"
#include "spanlab/rng.hpp"
#include "spanlab/spectrum.hpp"
#include "spanlab/triangle_factor.hpp"
#include "spanlab/verify.hpp"
