#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "costrat/parallel.hpp"

using namespace costrat;

namespace {

struct ThreadGuard {
  explicit ThreadGuard(int n) { set_thread_count(n); }
  ~ThreadGuard() { set_thread_count(0); }
};

}  // namespace

TEST(Parallel, ThreadCountSetting) {
  ThreadGuard guard(3);
  EXPECT_EQ(thread_count(), 3);
  set_thread_count(-2);
  EXPECT_GE(thread_count(), 1);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  for (int threads : {1, 2, 8}) {
    ThreadGuard guard(threads);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(Parallel, NestedCallsRunInline) {
  ThreadGuard guard(4);
  std::vector<std::vector<std::thread::id>> ids(4, std::vector<std::thread::id>(50));
  parallel_for(4, [&](std::size_t i) {
    parallel_for(50, [&](std::size_t j) { ids[i][j] = std::this_thread::get_id(); });
  });
  for (const auto& row : ids)
    for (const auto& id : row) EXPECT_EQ(id, row.front());
}

TEST(Parallel, RethrowsSmallestFailingIndex) {
  for (int threads : {1, 4}) {
    ThreadGuard guard(threads);
    try {
      parallel_for(200, [](std::size_t i) {
        if (i % 37 == 5) throw std::runtime_error(std::to_string(i));
      });
      FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "5");
    }
  }
}
