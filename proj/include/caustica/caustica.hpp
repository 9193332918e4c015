#pragma once

#include "caustica/error.hpp"
#include "caustica/geometry.hpp"
#include "caustica/polyroots.hpp"
#include "caustica/parabola2d.hpp"
#include "caustica/normals.hpp"
#include "caustica/caustic.hpp"
#include "caustica/oracle.hpp"
#include "caustica/classifier.hpp"
#include "caustica/mesh.hpp"
#include "caustica/export.hpp"
#include "caustica/config.hpp"
