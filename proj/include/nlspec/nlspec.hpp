#pragma once

#include "nlspec/core/domain.hpp"
#include "nlspec/core/grid.hpp"
#include "nlspec/core/index_space.hpp"
#include "nlspec/core/parallel.hpp"
#include "nlspec/core/pencil.hpp"
#include "nlspec/core/types.hpp"

#include "nlspec/linalg/gamma.hpp"
#include "nlspec/linalg/graph_gap.hpp"
#include "nlspec/linalg/singular_values.hpp"

#include "nlspec/algorithms/gamma_field.hpp"
#include "nlspec/algorithms/localize.hpp"
#include "nlspec/algorithms/pseudoeigenfunction.hpp"
#include "nlspec/algorithms/pseudospectrum.hpp"

#include "nlspec/metric/metric.hpp"

#include "nlspec/pencils/acoustic_fem.hpp"
#include "nlspec/pencils/acoustic_wave.hpp"
#include "nlspec/pencils/finite_section.hpp"
#include "nlspec/pencils/fractional_beam.hpp"
#include "nlspec/pencils/klein_gordon.hpp"
#include "nlspec/pencils/polynomials.hpp"
#include "nlspec/pencils/predator_prey.hpp"
#include "nlspec/pencils/registry.hpp"
#include "nlspec/pencils/shift.hpp"
