#pragma once

#include "echelon/block.hpp"
#include "echelon/errors.hpp"
#include "echelon/factor.hpp"
#include "echelon/io.hpp"
#include "echelon/matrix.hpp"
#include "echelon/oracle.hpp"
#include "echelon/rational.hpp"
#include "echelon/rref.hpp"
#include "echelon/scalar.hpp"
