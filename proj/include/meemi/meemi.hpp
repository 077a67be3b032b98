#pragma once

#include "meemi/alignment.hpp"
#include "meemi/common.hpp"
#include "meemi/embeddings.hpp"
#include "meemi/evaluation.hpp"
#include "meemi/fixtures.hpp"
#include "meemi/lexicon.hpp"
#include "meemi/parallel.hpp"
#include "meemi/refinement.hpp"
#include "meemi/retrieval.hpp"
#include "meemi/solvers.hpp"
