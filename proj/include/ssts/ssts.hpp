/// Umbrella header.

#ifndef SSTS_SSTS_HPP
#define SSTS_SSTS_HPP

#include "ssts/bench.hpp"
#include "ssts/gmres.hpp"
#include "ssts/lanczos.hpp"
#include "ssts/matrix_market.hpp"
#include "ssts/problems.hpp"
#include "ssts/report_json.hpp"
#include "ssts/sparse.hpp"
#include "ssts/spd_solve.hpp"
#include "ssts/spectral.hpp"
#include "ssts/stationary.hpp"
#include "ssts/table1.hpp"
#include "ssts/transform.hpp"

#endif  // SSTS_SSTS_HPP
