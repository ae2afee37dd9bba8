#pragma once

// Data-parallel inner loops of the cone engine. Each kernel has a serial
// reference version; the OpenMP versions must return identical results.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ordlim/words.hpp"

namespace ordlim::kernels {

using Normalizer = std::function<Word(const Word&)>;

struct Candidate {
  Word nf;
  std::int32_t parent = -1;  // index into the frontier
  std::int32_t gen = -1;
};

/// Candidates nf(frontier[i] * gens[j]) in (i, j) row-major order.
std::vector<Candidate> expand_serial(std::span<const Word> frontier, std::span<const Word> gens,
                                     const Normalizer& nf);
std::vector<Candidate> expand_parallel(std::span<const Word> frontier, std::span<const Word> gens,
                                       const Normalizer& nf);

/// Applies f to every index in [0, n); serial and OpenMP variants.
void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& f);
void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace ordlim::kernels
