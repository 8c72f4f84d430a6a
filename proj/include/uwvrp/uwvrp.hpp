#pragma once

#include "uwvrp/bounds.hpp"
#include "uwvrp/error.hpp"
#include "uwvrp/fleet.hpp"
#include "uwvrp/generate.hpp"
#include "uwvrp/instance.hpp"
#include "uwvrp/oracle.hpp"
#include "uwvrp/ratio.hpp"
#include "uwvrp/repairman.hpp"
#include "uwvrp/schedule.hpp"
#include "uwvrp/windows.hpp"
