#include <cmath>

#include <gtest/gtest.h>

#include "guamp/errors.hpp"
#include "guamp/metrics.hpp"
#include "guamp/rng.hpp"

using namespace guamp;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST(Nmse, HandValues) {
  EXPECT_EQ(nmse(vec({1, 2}), vec({1, 2})), 0.0);
  EXPECT_EQ(nmse(vec({1, 2}), vec({0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(nmse(vec({1, 2}), vec({1, 1})), 0.2);
}

TEST(Dnmse, HandValues) {
  EXPECT_NEAR(dnmse(vec({1, -2, 3}), vec({2, -4, 6})), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(dnmse(vec({1, 0}), vec({0, 1})), 1.0);
  EXPECT_DOUBLE_EQ(dnmse(vec({1, 1}), vec({1, 0})), 0.5);
  EXPECT_EQ(dnmse(vec({1, 1}), vec({0, 0})), 1.0);
}

TEST(Metrics, ZeroReferenceIsDegenerate) {
  EXPECT_THROW(nmse(vec({0, 0}), vec({1, 0})), DegenerateInput);
  EXPECT_THROW(dnmse(vec({0, 0}), vec({1, 0})), DegenerateInput);
}

TEST(Dnmse, ScaleInvariantAndBelowNmse) {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Vector z(20), zh(20);
    for (Index i = 0; i < 20; ++i) {
      z(i) = rng.normal();
      zh(i) = z(i) + rng.normal() * rng.uniform() * 2.0;
    }
    const double d = dnmse(z, zh);
    for (double c : {-3.0, 1e-5, 0.7, 1e8}) EXPECT_NEAR(dnmse(z, c * zh), d, 1e-12);
    EXPECT_LE(d, nmse(z, zh) + 1e-15);
  }
}

TEST(Dnmse, HugeEstimateStaysFinite) {
  const Vector z = vec({1, 2, 3});
  const double d = dnmse(z, vec({1e300, -2e300, 1e299}));
  EXPECT_TRUE(std::isfinite(d));
  EXPECT_TRUE(std::isinf(nmse(z, vec({1e300, -2e300, 1e299}))));
}

TEST(ToDb, Conversion) {
  EXPECT_DOUBLE_EQ(to_db(0.01), -20.0);
  EXPECT_EQ(to_db(0.0), kDbFloor);
  EXPECT_TRUE(std::isinf(to_db(INFINITY)));
  EXPECT_TRUE(std::isinf(to_db(NAN)));
}
