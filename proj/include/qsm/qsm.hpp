#pragma once

// Umbrella header: the whole library.

#include "qsm/berezinian.hpp"
#include "qsm/endtensor.hpp"
#include "qsm/errors.hpp"
#include "qsm/multiindex.hpp"
#include "qsm/ncpoly.hpp"
#include "qsm/parser.hpp"
#include "qsm/qscalar.hpp"
#include "qsm/quotient.hpp"
#include "qsm/report.hpp"
#include "qsm/series.hpp"
#include "qsm/suites.hpp"
#include "qsm/tensor_checks.hpp"
#include "qsm/word.hpp"
