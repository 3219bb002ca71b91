#pragma once

#include "hwselj/config.hpp"
#include "hwselj/electrostatics.hpp"
#include "hwselj/errors.hpp"
#include "hwselj/experiment.hpp"
#include "hwselj/finger.hpp"
#include "hwselj/format.hpp"
#include "hwselj/geometry.hpp"
#include "hwselj/ode.hpp"
#include "hwselj/specimen.hpp"
#include "hwselj/tension.hpp"
#include "hwselj/vec3.hpp"
