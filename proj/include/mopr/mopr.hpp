#pragma once

#include "mopr/errors.hpp"
#include "mopr/functional.hpp"
#include "mopr/index_seq.hpp"
#include "mopr/matrix.hpp"
#include "mopr/mop.hpp"
#include "mopr/multi_index.hpp"
#include "mopr/poly.hpp"
#include "mopr/rational.hpp"
#include "mopr/roots.hpp"
#include "mopr/transform.hpp"
