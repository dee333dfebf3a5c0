#ifndef TORFLAT_TORFLAT_HPP
#define TORFLAT_TORFLAT_HPP

#include "errors.hpp"
#include "rational.hpp"
#include "intlattice.hpp"
#include "poly.hpp"
#include "toric.hpp"
#include "super.hpp"
#include "jacobian.hpp"
#include "unfolding.hpp"
#include "verify.hpp"
#include "text.hpp"
#include "problem.hpp"
#include "report.hpp"
#include "pipeline.hpp"

#endif // TORFLAT_TORFLAT_HPP
