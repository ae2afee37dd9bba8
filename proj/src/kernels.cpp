#include "ordlim/kernels.hpp"

#include <exception>
#include <mutex>

namespace ordlim::kernels {

std::vector<Candidate> expand_serial(std::span<const Word> frontier, std::span<const Word> gens,
                                     const Normalizer& nf) {
  std::vector<Candidate> out;
  out.reserve(frontier.size() * gens.size());
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      out.push_back({nf(mul(frontier[i], gens[j])), static_cast<std::int32_t>(i),
                     static_cast<std::int32_t>(j)});
    }
  }
  return out;
}

std::vector<Candidate> expand_parallel(std::span<const Word> frontier, std::span<const Word> gens,
                                       const Normalizer& nf) {
  const std::size_t ng = gens.size();
  const std::int64_t total = static_cast<std::int64_t>(frontier.size() * ng);
  std::vector<Candidate> out(static_cast<std::size_t>(total));
  std::exception_ptr failure;
  std::mutex failure_mu;
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / ng;
    const std::size_t j = static_cast<std::size_t>(idx) % ng;
    try {
      out[static_cast<std::size_t>(idx)] = {nf(mul(frontier[i], gens[j])), static_cast<std::int32_t>(i),
                                            static_cast<std::int32_t>(j)};
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& f) {
  for (std::size_t i = 0; i < n; ++i) f(i);
}

void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& f) {
  std::exception_ptr failure;
  std::mutex failure_mu;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ordlim::kernels
