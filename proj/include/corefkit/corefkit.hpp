#pragma once

// Umbrella header.

#include "corefkit/chain_stats.hpp"
#include "corefkit/enrichment.hpp"
#include "corefkit/error_analysis.hpp"
#include "corefkit/errors.hpp"
#include "corefkit/evaluation.hpp"
#include "corefkit/formats/conll.hpp"
#include "corefkit/formats/jsonl.hpp"
#include "corefkit/formats/mmax.hpp"
#include "corefkit/formats/tagged_text.hpp"
#include "corefkit/model.hpp"
#include "corefkit/parallel.hpp"
#include "corefkit/util.hpp"
#include "corefkit/version.hpp"
