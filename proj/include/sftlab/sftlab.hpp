#pragma once

#include "sftlab/errors.hpp"
#include "sftlab/rational.hpp"
#include "sftlab/polynomial.hpp"
#include "sftlab/edge_shift.hpp"
#include "sftlab/spectral.hpp"
#include "sftlab/block_code.hpp"
#include "sftlab/builtins.hpp"
#include "sftlab/coding_range.hpp"
#include "sftlab/dimension_rep.hpp"
#include "sftlab/entropy_lab.hpp"
#include "sftlab/spectra.hpp"
#include "sftlab/report.hpp"
#include "sftlab/analysis.hpp"
#include "sftlab/suites.hpp"
#include "sftlab/system_file.hpp"
