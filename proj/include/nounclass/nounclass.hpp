#ifndef NOUNCLASS_NOUNCLASS_HPP
#define NOUNCLASS_NOUNCLASS_HPP

#include "core.hpp"
#include "rng.hpp"
#include "unicode.hpp"
#include "io.hpp"
#include "embedding_store.hpp"
#include "transfer_knn.hpp"
#include "corpus.hpp"
#include "pca.hpp"
#include "reduce.hpp"
#include "kmeans.hpp"
#include "prefix_mapper.hpp"
#include "ensemble.hpp"
#include "synth_lang.hpp"
#include "report.hpp"
#include "pipeline.hpp"

#endif
