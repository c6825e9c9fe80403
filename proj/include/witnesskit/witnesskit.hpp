#pragma once

#include "witnesskit/basis.hpp"
#include "witnesskit/config.hpp"
#include "witnesskit/error.hpp"
#include "witnesskit/linalg.hpp"
#include "witnesskit/maps.hpp"
#include "witnesskit/mdi.hpp"
#include "witnesskit/reference.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/verify.hpp"
#include "witnesskit/witness.hpp"
