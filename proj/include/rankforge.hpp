#pragma once

#include "rankforge/bilinear.hpp"
#include "rankforge/bounds.hpp"
#include "rankforge/error.hpp"
#include "rankforge/expander.hpp"
#include "rankforge/gf.hpp"
#include "rankforge/io.hpp"
#include "rankforge/matrix.hpp"
#include "rankforge/montecarlo.hpp"
#include "rankforge/poly.hpp"
#include "rankforge/rational.hpp"
#include "rankforge/report.hpp"
#include "rankforge/rng.hpp"
#include "rankforge/seeded.hpp"
#include "rankforge/smallfield.hpp"
#include "rankforge/subspaces.hpp"
#include "rankforge/twosource.hpp"
#include "rankforge/verify.hpp"
