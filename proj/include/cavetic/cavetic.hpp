#pragma once

#include "anaclastic.hpp"
#include "cavity_loss.hpp"
#include "cqed.hpp"
#include "decomposition.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "lg_modes.hpp"
#include "numerics.hpp"
#include "optics.hpp"
#include "raytrace.hpp"
#include "spectrum.hpp"
