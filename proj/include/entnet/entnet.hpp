#pragma once

#include "entnet/error.hpp"
#include "entnet/keydist.hpp"
#include "entnet/locc.hpp"
#include "entnet/netgraph.hpp"
#include "entnet/protocols.hpp"
#include "entnet/qss.hpp"
#include "entnet/rng.hpp"
#include "entnet/statevec.hpp"
