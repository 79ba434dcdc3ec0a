#pragma once

#include "kplanar/bounds.hpp"
#include "kplanar/construction.hpp"
#include "kplanar/decompose.hpp"
#include "kplanar/drawing.hpp"
#include "kplanar/error.hpp"
#include "kplanar/generators.hpp"
#include "kplanar/geometry.hpp"
#include "kplanar/graph.hpp"
#include "kplanar/io.hpp"
#include "kplanar/montecarlo.hpp"
#include "kplanar/oracle.hpp"
#include "kplanar/rational.hpp"
#include "kplanar/rng.hpp"
#include "kplanar/svg.hpp"
#include "kplanar/weights.hpp"
