#pragma once

#include "eelkit/core.hpp"
#include "eelkit/geometry.hpp"
#include "eelkit/sphere_net.hpp"
#include "eelkit/curve.hpp"
#include "eelkit/polyline_io.hpp"
#include "eelkit/checkers.hpp"
#include "eelkit/constructions.hpp"
#include "eelkit/rectifiability.hpp"
#include "eelkit/report_json.hpp"
