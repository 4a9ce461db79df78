#ifndef CHIFORGE_CHIFORGE_HPP
#define CHIFORGE_CHIFORGE_HPP

#include "chiforge/base_properties.hpp"
#include "chiforge/bases.hpp"
#include "chiforge/derive.hpp"
#include "chiforge/errors.hpp"
#include "chiforge/fact_trials.hpp"
#include "chiforge/graph.hpp"
#include "chiforge/io.hpp"
#include "chiforge/oracle/clique.hpp"
#include "chiforge/oracle/coloring.hpp"
#include "chiforge/oracle/girth.hpp"
#include "chiforge/oracle/hypergraph.hpp"
#include "chiforge/oracle/induced.hpp"
#include "chiforge/oracle/longest_path.hpp"
#include "chiforge/random.hpp"
#include "chiforge/sidon.hpp"
#include "chiforge/tournaments.hpp"

#endif // CHIFORGE_CHIFORGE_HPP
