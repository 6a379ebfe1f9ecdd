#pragma once

#include "ossv/char_class.hpp"
#include "ossv/curvature.hpp"
#include "ossv/indefinite.hpp"
#include "ossv/json_io.hpp"
#include "ossv/osserman.hpp"
#include "ossv/rng.hpp"
#include "ossv/spectral.hpp"
