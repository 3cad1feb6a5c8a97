#pragma once

#include "rpfif/classical_fif.hpp"
#include "rpfif/config.hpp"
#include "rpfif/engine.hpp"
#include "rpfif/errors.hpp"
#include "rpfif/export.hpp"
#include "rpfif/geometry.hpp"
#include "rpfif/projective.hpp"
#include "rpfif/random.hpp"
#include "rpfif/rpifs.hpp"
#include "rpfif/verify.hpp"
