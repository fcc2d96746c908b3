#pragma once

#include "qdeco/dynamics/collision.hpp"
#include "qdeco/dynamics/em.hpp"
#include "qdeco/dynamics/esd.hpp"
#include "qdeco/dynamics/master.hpp"
#include "qdeco/dynamics/spatial.hpp"
#include "qdeco/dynamics/trajectory.hpp"
