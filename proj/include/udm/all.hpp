#pragma once

#include <udm/codec.hpp>
#include <udm/error.hpp>
#include <udm/format.hpp>
#include <udm/gf.hpp>
#include <udm/hasse.hpp>
#include <udm/linalg.hpp>
#include <udm/tuples.hpp>
#include <udm/udm.hpp>
