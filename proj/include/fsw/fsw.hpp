#pragma once

#include "fsw/model.hpp"
#include "fsw/moments.hpp"
#include "fsw/momentum.hpp"
#include "fsw/numerics.hpp"
#include "fsw/position.hpp"
#include "fsw/spectrum.hpp"
#include "fsw/verify.hpp"
