#pragma once

#include "reseq/assembler.hpp"
#include "reseq/bench.hpp"
#include "reseq/errors.hpp"
#include "reseq/executor.hpp"
#include "reseq/fragment_index.hpp"
#include "reseq/io.hpp"
#include "reseq/overlap.hpp"
#include "reseq/radix_sort.hpp"
#include "reseq/scan.hpp"
#include "reseq/sequence.hpp"
#include "reseq/shotgun.hpp"
#include "reseq/suffix_array.hpp"
