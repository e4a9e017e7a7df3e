#pragma once

#include <random>

#include "torsionlab/chain_complex.hpp"

namespace torsionlab::testing {

struct RandomComplexOptions {
  int max_length = 5;
  std::size_t max_rank = 6;
  bool acyclic = false;
  bool odd_length_only = false;
};

struct RandomComplex {
  ChainComplexData complex;
  HomologyBasisData homology;
};

Rational random_nonzero_rational(std::mt19937_64& rng, int max_num = 3, int max_den = 3);
RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound = 2);
RationalMatrix random_invertible(std::mt19937_64& rng, std::size_t n);

/// A canonical complex (homology plus scaled boundary pairs) conjugated by
/// random invertible base changes.
RandomComplex random_complex(std::mt19937_64& rng, const RandomComplexOptions& options = {});

/// Cycle lifts shifted by random boundaries (same homology classes).
HomologyBasisData perturb_lifts(std::mt19937_64& rng, const ChainComplexData& c, const HomologyBasisData& h);

/// The default b-sets replaced by random ones with the same boundary images
/// up to invertible recombination and added cycles.
BSets random_b(std::mt19937_64& rng, const ChainComplexData& c);

struct RandomSequence {
  ShortExactSequence sequence;
  HomologyBasisData h_sub;
  HomologyBasisData h_total;
  HomologyBasisData h_quot;
};

/// Extension of two random complexes via X_q = ∂'_q Y_q - Y_{q-1} ∂''_q. With
/// `mix` the total complex is conjugated so the pair is no longer cellular.
RandomSequence random_sequence(std::mt19937_64& rng, bool acyclic, bool mix, int max_length = 4,
                               std::size_t max_rank = 3);

}  // namespace torsionlab::testing
