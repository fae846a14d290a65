/*
   Copyright 2026 The jdpp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Exact sampling by particle-hole duality: a valid J-Hermitian K is never
// sampled directly. Instead the Hermitian DPP with kernel hat(K) is sampled
// spectrally and each draw is mapped through the involution.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jdpp/dpp.hpp"
#include "jdpp/jop.hpp"

namespace jdpp {

struct SampleBatch {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::vector<Configuration> configurations;
};

// Sample i uses only the Philox stream (seed, sampler tag, i); `threads`
// shards indices and never changes the output.
struct SamplerOptions {
  unsigned threads = 1;
};

// Spectral sampler for a Hermitian kernel with spectrum in [0, 1].
// Eigenvalues within 1e-9 of [0, 1] are clamped; anything further out, or a
// non-Hermitian matrix, throws InvalidKernel. Points are the indices of the
// kernel's space.
SampleBatch sample_hermitian(const JKernel& h, std::size_t count,
                             std::uint64_t seed, SamplerOptions opt = {});

// complement(gamma) for gamma drawn from hat(K). Throws InvalidKernel for
// kernels failing check_validity.
SampleBatch sample_j(const JKernel& k, std::size_t count, std::uint64_t seed,
                     SamplerOptions opt = {});

struct EstimateEntry {
  CorrelationQuery query;
  double exact = 0.0;
  double empirical = 0.0;
  double stderr_ = 0.0;  // sqrt(p(1-p)/N) at the empirical p
  double z = 0.0;
  bool flagged = false;  // |z| > 4
};

struct EstimateReport {
  std::size_t count = 0;
  std::vector<EstimateEntry> entries;
};

// Empirical P(gamma ⊇ q) over a sample_j batch against det K[q, q].
EstimateReport estimate(const JKernel& k,
                        std::span<const CorrelationQuery> queries,
                        std::size_t count, std::uint64_t seed,
                        SamplerOptions opt = {});

// Same, over an existing batch.
EstimateReport estimate_from(const JKernel& k,
                             std::span<const CorrelationQuery> queries,
                             const SampleBatch& batch);

struct GofReport {
  double statistic = 0.0;
  std::size_t cells = 0;  // after pooling
  int dof = 0;
  double p_value = 1.0;
  std::size_t count = 0;
};

// Chi-square test of a batch against exact masses. Cells with expected
// count below 5 are pooled; a pool still below 5 joins the smallest
// remaining cell. With one cell left the test is degenerate (p = 1).
GofReport chi_square_fit(const DistributionTable& table,
                         const SampleBatch& batch);

// chi_square_fit(exact_distribution(K), sample_j(K, count, seed)).
GofReport goodness_of_fit(const JKernel& k, std::size_t count,
                          std::uint64_t seed, SamplerOptions opt = {});

}  // namespace jdpp
