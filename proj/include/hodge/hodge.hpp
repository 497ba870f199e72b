#pragma once

#include "hodge/types.hpp"
#include "hodge/complex.hpp"
#include "hodge/cochain.hpp"
#include "hodge/operators.hpp"
#include "hodge/spectral.hpp"
#include "hodge/bounds.hpp"
#include "hodge/coloring.hpp"
#include "hodge/bloch.hpp"
#include "hodge/io.hpp"
