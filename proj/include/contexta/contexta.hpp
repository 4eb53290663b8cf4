#pragma once

#include "contexta/common.hpp"
#include "contexta/gf.hpp"
#include "contexta/exact.hpp"
#include "contexta/pauli.hpp"
#include "contexta/presheaf.hpp"
#include "contexta/quantum.hpp"
#include "contexta/model.hpp"
#include "contexta/covers.hpp"
#include "contexta/decision.hpp"
#include "contexta/topology.hpp"
#include "contexta/io.hpp"
