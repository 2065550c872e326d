#pragma once

#include "latticeforge/bounds.hpp"
#include "latticeforge/cbc.hpp"
#include "latticeforge/core.hpp"
#include "latticeforge/discrepancy.hpp"
#include "latticeforge/harmonic.hpp"
#include "latticeforge/io.hpp"
#include "latticeforge/quality.hpp"
#include "latticeforge/util.hpp"
