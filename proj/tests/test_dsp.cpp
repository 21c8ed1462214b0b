#include <doctest.h>

#include <cmath>
#include <random>

#include "adl/dsp.hpp"
#include "adl/error.hpp"
#include "adl/rng.hpp"
#include "oracles.hpp"

using namespace adl;

TEST_CASE("magnitude is the per-sample euclidean norm") {
  Capture c;
  c.label = AdlLabel::Walking;
  c.rate_hz = 50.0;
  c.samples = {{0.0, 3.0, 4.0, 0.0}, {20.0, 1.0, 2.0, 2.0}, {40.0, 0.0, 0.0, -9.81}};
  const ScalarSeries s = magnitude(c);
  CHECK(s.rate_hz == 50.0);
  REQUIRE(s.values.size() == 3);
  CHECK(s.values[0] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(s.values[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.values[2] == doctest::Approx(9.81).epsilon(1e-12));
}

TEST_CASE("lowpass validates alpha") {
  ScalarSeries s{100.0, {1.0, 2.0, 3.0}};
  CHECK_THROWS_AS(lowpass(s, 0.0), Error);
  CHECK_THROWS_AS(lowpass(s, -0.1), Error);
  CHECK_THROWS_AS(lowpass(s, 1.1), Error);
  CHECK_THROWS_AS(lowpass(s, std::nan("")), Error);
  try {
    lowpass(s, 0.0);
  } catch (const Error& e) {
    CHECK(e.kind() == Errc::AlphaOutOfRange);
  }
}

TEST_CASE("lowpass with alpha 1 is the identity") {
  ScalarSeries s{100.0, {4.0, -1.0, 7.5, 0.25}};
  const ScalarSeries out = lowpass(s, 1.0);
  CHECK(out.values == s.values);
}

TEST_CASE("lowpass passes constants through unchanged") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const double c = 20.0 * uniform01(rng) - 10.0;
    const double alpha = 0.01 + 0.99 * uniform01(rng);
    ScalarSeries s{100.0, std::vector<double>(64, c)};
    const ScalarSeries out = lowpass(s, alpha);
    for (double v : out.values) CHECK(v == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("lowpass satisfies its own recurrence") {
  std::mt19937_64 rng(12);
  ScalarSeries s = oracle::random_series(rng, 200, oracle::SeriesMode::Smooth);
  const double alpha = 0.23;
  const ScalarSeries y = lowpass(s, alpha);
  CHECK(y.values[0] == s.values[0]);
  for (std::size_t i = 1; i < y.values.size(); ++i)
    CHECK(y.values[i] ==
          doctest::Approx(alpha * s.values[i] + (1.0 - alpha) * y.values[i - 1])
              .epsilon(1e-12));
}

TEST_CASE("lowpass sine attenuation matches the analytic gain") {
  const double rate = 100.0;
  for (double alpha : {0.05, 0.1, 0.3, 0.9}) {
    for (double freq : {1.0, 5.0, 10.0, 20.0}) {
      ScalarSeries s;
      s.rate_hz = rate;
      for (int i = 0; i < 1000; ++i)
        s.values.push_back(std::sin(2.0 * 3.14159265358979323846 * freq *
                                    double(i) / rate));
      const ScalarSeries y = lowpass(s, alpha);
      const double measured =
          oracle::demod_amplitude(y.values, freq, rate, 600, 400);
      const double expected = oracle::lowpass_gain(alpha, freq, rate);
      CHECK(measured == doctest::Approx(expected).epsilon(1e-3));
    }
  }
}

TEST_CASE("detect_peaks finds interior strict maxima") {
  ScalarSeries s{100.0, {0.0, 1.0, 0.0, 2.0, 0.0}};
  const PeakSet p = detect_peaks(s, 0.0, 0.0);
  REQUIRE(p.size() == 2);
  CHECK(p.indices[0] == 1);
  CHECK(p.indices[1] == 3);
  CHECK(p.values[0] == 1.0);
  CHECK(p.values[1] == 2.0);
}

TEST_CASE("detect_peaks never selects endpoints") {
  ScalarSeries s{100.0, {3.0, 1.0, 2.0}};
  const PeakSet p = detect_peaks(s, 0.0, 0.0);
  CHECK(p.empty());
}

TEST_CASE("detect_peaks takes the leftmost index of a plateau") {
  ScalarSeries s{100.0, {0.0, 5.0, 5.0, 5.0, 0.0, 0.0}};
  const PeakSet p = detect_peaks(s, 0.0, 0.0);
  REQUIRE(p.size() == 1);
  CHECK(p.indices[0] == 1);
}

TEST_CASE("detect_peaks suppresses lower peaks inside the separation window") {
  // Indices 1 and 3 are 20 ms apart at 100 Hz.
  ScalarSeries s{100.0, {0.0, 1.0, 0.0, 2.0, 0.0}};
  const PeakSet p = detect_peaks(s, 30.0, 0.0);
  REQUIRE(p.size() == 1);
  CHECK(p.indices[0] == 3);
}

TEST_CASE("detect_peaks applies the mean plus std threshold") {
  // mean = 2, std > 0; with floor 1 only values above mean + std survive.
  ScalarSeries s{100.0, {0.0, 3.0, 0.0, 9.0, 0.0, 3.0, 0.0, 1.0, 2.0}};
  const PeakSet all = detect_peaks(s, 0.0, 0.0);
  const PeakSet strict = detect_peaks(s, 0.0, 1.0);
  CHECK(all.size() == 3);
  REQUIRE(strict.size() == 1);
  CHECK(strict.indices[0] == 3);
}

TEST_CASE("detect_peaks rejects a negative separation") {
  ScalarSeries s{100.0, {0.0, 1.0, 0.0}};
  CHECK_THROWS_AS(detect_peaks(s, -1.0, 0.0), Error);
}

TEST_CASE("detect_peaks matches the exhaustive oracle") {
  std::mt19937_64 rng(77);
  const oracle::SeriesMode modes[] = {oracle::SeriesMode::Smooth,
                                      oracle::SeriesMode::Quantized,
                                      oracle::SeriesMode::Spiky};
  for (int trial = 0; trial < 300; ++trial) {
    const auto mode = modes[trial % 3];
    const std::size_t n = 20 + rng() % 300;
    ScalarSeries s = oracle::random_series(rng, n, mode);
    const double sep = double(rng() % 40) * 10.0;
    const double floor_sd = double(rng() % 4) * 0.5;
    const PeakSet got = detect_peaks(s, sep, floor_sd);
    const PeakSet want = oracle::naive_peaks(s, sep, floor_sd);
    CHECK(got.indices == want.indices);
    CHECK(got.values == want.values);
  }
}

TEST_CASE("detect_peaks output is ordered and separated") {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 50; ++trial) {
    ScalarSeries s = oracle::random_series(rng, 400, oracle::SeriesMode::Smooth);
    const double sep = 130.0;
    const PeakSet p = detect_peaks(s, sep, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) {
      CHECK(p.indices[i] > p.indices[i - 1]);
      const double gap_ms =
          double(p.indices[i] - p.indices[i - 1]) * 1000.0 / s.rate_hz;
      CHECK(gap_ms >= sep);
    }
  }
}
