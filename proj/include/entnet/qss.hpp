#pragma once

#include "entnet/qss/access.hpp"
#include "entnet/qss/encryption.hpp"
#include "entnet/qss/homogenize.hpp"
#include "entnet/qss/planner.hpp"
#include "entnet/qss/qutrit_code.hpp"
#include "entnet/qss/shamir.hpp"
