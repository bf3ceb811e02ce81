#pragma once

#include "compdiag/core/combinations.hpp"
#include "compdiag/core/components.hpp"
#include "compdiag/core/error.hpp"
#include "compdiag/core/graph.hpp"
#include "compdiag/core/io.hpp"
#include "compdiag/core/limits.hpp"
#include "compdiag/core/mask_graph.hpp"
#include "compdiag/core/matching.hpp"
#include "compdiag/core/node_set.hpp"
#include "compdiag/core/parallel.hpp"
#include "compdiag/diagnosis/diagnosability.hpp"
#include "compdiag/diagnosis/distinguish.hpp"
#include "compdiag/diagnosis/syndrome.hpp"
#include "compdiag/netgen/generators.hpp"
#include "compdiag/netgen/network_spec.hpp"
#include "compdiag/netgen/validate.hpp"
#include "compdiag/report.hpp"
#include "compdiag/theorem/conditions.hpp"
#include "compdiag/theorem/formulas.hpp"
#include "compdiag/theorem/tables.hpp"
