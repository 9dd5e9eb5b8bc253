#pragma once

#include "kronecker/bounds.hpp"
#include "kronecker/covering.hpp"
#include "kronecker/errors.hpp"
#include "kronecker/harness.hpp"
#include "kronecker/interval.hpp"
#include "kronecker/numbers.hpp"
#include "kronecker/oracle.hpp"
#include "kronecker/rational.hpp"
#include "kronecker/report.hpp"
