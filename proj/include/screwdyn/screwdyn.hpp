#pragma once

#include "screwdyn/bench.hpp"
#include "screwdyn/bodyfixed.hpp"
#include "screwdyn/chains.hpp"
#include "screwdyn/csv_io.hpp"
#include "screwdyn/dynamics.hpp"
#include "screwdyn/errors.hpp"
#include "screwdyn/kinematics.hpp"
#include "screwdyn/model_io.hpp"
#include "screwdyn/oracles.hpp"
#include "screwdyn/pipeline.hpp"
#include "screwdyn/random.hpp"
#include "screwdyn/robot_model.hpp"
#include "screwdyn/screw_algebra.hpp"
#include "screwdyn/verify.hpp"
