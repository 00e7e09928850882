#pragma once

#include "brute_force.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "explorer.hpp"
#include "factor_search.hpp"
#include "group_table.hpp"
#include "json_io.hpp"
#include "lemma_oracles.hpp"
#include "subset_algebra.hpp"
#include "subset_mask.hpp"
