#pragma once

// Everything except serialize.hpp, which needs nlohmann/json.

#include "shallowsep/algo1.hpp"
#include "shallowsep/algo2.hpp"
#include "shallowsep/algo3.hpp"
#include "shallowsep/clustering.hpp"
#include "shallowsep/ddg.hpp"
#include "shallowsep/dec_oracle.hpp"
#include "shallowsep/generators.hpp"
#include "shallowsep/graph_io.hpp"
#include "shallowsep/minicluster.hpp"
#include "shallowsep/spanner.hpp"
#include "shallowsep/verify.hpp"
#include "shallowsep/xclusters.hpp"
