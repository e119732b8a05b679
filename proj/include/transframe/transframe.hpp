#ifndef TRANSFRAME_TRANSFRAME_HPP
#define TRANSFRAME_TRANSFRAME_HPP

#include "transframe/conditions.hpp"
#include "transframe/error.hpp"
#include "transframe/families.hpp"
#include "transframe/formula.hpp"
#include "transframe/frame.hpp"
#include "transframe/frame_formula.hpp"
#include "transframe/io.hpp"
#include "transframe/omega_tree.hpp"
#include "transframe/point_set.hpp"
#include "transframe/reduction.hpp"
#include "transframe/representation.hpp"
#include "transframe/semantics.hpp"
#include "transframe/skeleton.hpp"

#endif  // TRANSFRAME_TRANSFRAME_HPP
