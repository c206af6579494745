#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace conlat {

// Splits [0, total) into at most `workers` contiguous chunks, runs
// fn(begin, end) on each, and returns the per-chunk results in chunk order.
// Callers that concatenate the results get the same output for every
// worker count.
template <typename Result, typename Fn>
std::vector<Result> parallel_chunks(std::uint64_t total, unsigned workers, Fn&& fn) {
  workers = std::max(1U, workers);
  auto const chunks = static_cast<std::uint64_t>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(total, 1)));
  std::vector<Result> results(static_cast<std::size_t>(chunks));
  auto bounds = [&](std::uint64_t c) { return total * c / chunks; };
  if (chunks == 1) {
    results[0] = fn(std::uint64_t{0}, total);
    return results;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(chunks));
  for (std::uint64_t c = 0; c < chunks; ++c) {
    threads.emplace_back([&, c] {
      try {
        results[static_cast<std::size_t>(c)] = fn(bounds(c), bounds(c + 1));
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return results;
}

// Odometer over image vectors in lexicographic order (images[0] most
// significant), matching UnaryMap::code().
inline void advance_images(std::vector<int>& img, int n) {
  for (std::size_t i = img.size(); i-- > 0;) {
    if (++img[i] < n) {
      return;
    }
    img[i] = 0;
  }
}

}  // namespace conlat
