#pragma once

#include "tdho/entropy_temp.hpp"
#include "tdho/ermakov.hpp"
#include "tdho/errors.hpp"
#include "tdho/oracle.hpp"
#include "tdho/profiles.hpp"
#include "tdho/representations.hpp"
#include "tdho/specfun.hpp"
#include "tdho/thermo.hpp"
#include "tdho/transitions.hpp"
