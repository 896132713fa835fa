#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace fanoforge {

// Splits [begin, end) into one contiguous chunk per worker and merges the
// partial results in chunk order. With an associative merge the result is
// identical to the single-worker run for every worker count, which is what
// keeps reports and censuses byte-stable under --workers.
template <typename R, typename ChunkFn, typename MergeFn>
R map_reduce(std::size_t begin, std::size_t end, unsigned workers, R init,
             ChunkFn chunk, MergeFn merge) {
  const std::size_t total = end > begin ? end - begin : 0;
  if (total == 0) return init;
  const unsigned w =
      unsigned(std::max<std::size_t>(1, std::min<std::size_t>(workers, total)));
  if (w == 1) return merge(std::move(init), chunk(begin, end));

  std::vector<R> parts(w);
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  const std::size_t per = total / w;
  const std::size_t extra = total % w;
  std::size_t cur = begin;
  for (unsigned i = 0; i < w; ++i) {
    const std::size_t b = cur;
    const std::size_t e = b + per + (i < extra ? 1 : 0);
    cur = e;
    threads.emplace_back([&parts, &errors, &chunk, i, b, e] {
      try {
        parts[i] = chunk(b, e);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (unsigned i = 0; i < w; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }
  R acc = std::move(init);
  for (unsigned i = 0; i < w; ++i) acc = merge(std::move(acc), std::move(parts[i]));
  return acc;
}

}  // namespace fanoforge
