#include "cheeger_gap/random_instance.hpp"
#include "doctest.h"

using namespace cheeger_gap;

TEST_CASE("same seed and index give the same matrix") {
  for (std::uint64_t k = 0; k < 20; ++k) {
    CHECK(random_stoquastic(42, k) == random_stoquastic(42, k));
  }
  CHECK_FALSE(random_stoquastic(42, 0) == random_stoquastic(42, 1));
  CHECK_FALSE(random_stoquastic(42, 0) == random_stoquastic(43, 0));
}

TEST_CASE("instances are valid and within the configured ranges") {
  RandomInstanceOptions opts;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto h = random_stoquastic(7, k, opts);
    CHECK(h.dim() >= opts.min_dim);
    CHECK(h.dim() <= opts.max_dim);
    CHECK(validate(h).ok());
    for (const auto& e : h.entries()) {
      if (e.row == e.col) {
        CHECK(e.value >= opts.diag_low);
        CHECK(e.value <= opts.diag_high);
      } else {
        CHECK(e.value >= opts.offdiag_low);
        CHECK(e.value <= opts.offdiag_high);
      }
    }
  }
}
