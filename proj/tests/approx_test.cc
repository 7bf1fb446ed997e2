#include "armac/approx/regressor.h"

#include <cmath>
#include <cstring>
#include <sstream>

#include "armac/harness/selfcheck.h"
#include "doctest.h"

using namespace armac;

namespace {

RegressorSpec tabular_spec(int in, int out) {
  RegressorSpec spec;
  spec.kind = RegressorKind::kTabularMean;
  spec.input_width = in;
  spec.output_width = out;
  return spec;
}

RegressorSpec net_spec(int in, int out, double lr = 5e-5) {
  RegressorSpec spec;
  spec.kind = RegressorKind::kFeedforward;
  spec.input_width = in;
  spec.output_width = out;
  spec.hidden = {8, 8};
  spec.step_size = lr;
  return spec;
}

Example example(std::vector<double> f, std::vector<double> t,
                std::vector<uint8_t> m, double w = 1.0) {
  return Example{std::move(f), std::move(t), std::move(m), w};
}

}  // namespace

TEST_CASE("tabular mean basics") {
  auto reg = make_regressor(tabular_spec(3, 2), 0);
  const std::vector<double> key = {1.0, 0.0, 1.0};

  // Unseen key: zero vector.
  CHECK(reg->predict(key) == std::vector<double>{0.0, 0.0});

  reg->train_regression({example(key, {1.0, 0.0}, {1, 0})});
  reg->train_regression({example(key, {3.0, 0.0}, {1, 0})});
  CHECK(reg->predict(key)[0] == doctest::Approx(2.0));  // mean of {1, 3}
  CHECK(reg->predict(key)[1] == 0.0);                   // never trained
}

TEST_CASE("tabular mean is the exact l2 minimizer") {
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto reg = make_regressor(tabular_spec(4, 1), 0);
    const std::vector<double> key = {1.0, 1.0, 0.0, 0.0};
    const int n = 1 + static_cast<int>(rng.next_index(200));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double target = 10.0 * rng.next_gaussian();
      sum += target;
      reg->train_regression({example(key, {target}, {1})});
    }
    REQUIRE(reg->predict(key)[0] == doctest::Approx(sum / n).epsilon(1e-12));
  }
}

TEST_CASE("tabular classification stores mean distributions") {
  auto reg = make_regressor(tabular_spec(2, 2), 0);
  const std::vector<double> key = {0.0, 1.0};
  reg->train_classification({example(key, {1.0, 0.0}, {1, 1})});
  reg->train_classification({example(key, {0.0, 1.0}, {1, 1})});
  const auto dist = reg->predict_distribution(key, {1, 1});
  CHECK(dist[0] == doctest::Approx(0.5));
  CHECK(dist[1] == doctest::Approx(0.5));

  // Masked entries disappear from the normalized output.
  auto reg2 = make_regressor(tabular_spec(2, 3), 0);
  reg2->train_classification(
      {example(key, {0.5, 0.5, 0.0}, {1, 1, 0})});
  const auto masked = reg2->predict_distribution(key, {1, 1, 0});
  CHECK(masked.size() == 2);
  CHECK(masked[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(
      reg2->train_classification({example(key, {0.9, 0.0, 0.0}, {1, 1, 0})}),
      InputError);
}

TEST_CASE("fresh feedforward net predicts zeros") {
  auto net = make_regressor(net_spec(5, 3), 42);
  const auto out = net->predict({1.0, 0.0, 1.0, 0.0, 1.0});
  for (double v : out) CHECK(v == 0.0);
  // Zero logits: uniform over the mask.
  const auto dist = net->predict_distribution({1, 0, 1, 0, 1}, {1, 1, 0});
  CHECK(dist == ActionDistribution{0.5, 0.5});
}

TEST_CASE("feedforward loss decreases on a fixed batch") {
  auto net = make_regressor(net_spec(4, 2, 5e-5), 7);
  Batch batch;
  Rng rng(2);
  for (int b = 0; b < 16; ++b) {
    std::vector<double> f(4);
    for (auto& x : f) x = rng.next_double() < 0.5 ? 0.0 : 1.0;
    batch.push_back(example(std::move(f),
                            {rng.next_gaussian(), rng.next_gaussian()},
                            {1, 1}));
  }
  const double first = net->train_regression(batch).loss;
  double last = first;
  for (int i = 0; i < 99; ++i) last = net->train_regression(batch).loss;
  CHECK(last < first);
}

TEST_CASE("classification head converges to a repeated one-hot") {
  auto net = make_regressor(net_spec(3, 3, 0.01), 9);
  const std::vector<double> f = {1.0, 0.0, 1.0};
  const Batch batch = {example(f, {0.0, 1.0, 0.0}, {1, 1, 1})};
  for (int i = 0; i < 1000; ++i) net->train_classification(batch);
  const auto dist = net->predict_distribution(f, {1, 1, 1});
  CHECK(std::fabs(dist[1] - 1.0) < 1e-2);
  CHECK(dist[0] < 1e-2);
}

TEST_CASE("gradients match finite differences") {
  const auto result = check_gradients(10, 1e-4, 31);
  CHECK(result.pass);
}

TEST_CASE("training is bitwise deterministic") {
  auto a = make_regressor(net_spec(6, 4, 1e-3), 1234);
  auto b = make_regressor(net_spec(6, 4, 1e-3), 1234);
  Rng rng(3);
  for (int step = 0; step < 50; ++step) {
    Batch batch;
    for (int k = 0; k < 8; ++k) {
      std::vector<double> f(6);
      for (auto& x : f) x = rng.next_double() < 0.5 ? 0.0 : 1.0;
      batch.push_back(example(std::move(f),
                              {rng.next_gaussian(), rng.next_gaussian(),
                               rng.next_gaussian(), rng.next_gaussian()},
                              {1, 1, 1, 1}));
    }
    a->train_regression(batch);
    b->train_regression(batch);
  }
  const auto& pa = dynamic_cast<const FeedforwardNet&>(*a).parameters();
  const auto& pb = dynamic_cast<const FeedforwardNet&>(*b).parameters();
  REQUIRE(pa.values.size() == pb.values.size());
  REQUIRE(std::memcmp(pa.values.data(), pb.values.data(),
                      pa.values.size() * sizeof(double)) == 0);
  CHECK(pa.version == 50);
}

TEST_CASE("non-finite updates are rejected") {
  auto net = make_regressor(net_spec(2, 1, 1.0), 5);
  const Batch nan_batch = {
      example({1.0, 0.0}, {std::numeric_limits<double>::infinity()}, {1})};
  CHECK_THROWS_AS(net->train_regression(nan_batch), std::runtime_error);
}

TEST_CASE("checkpoint round trip") {
  auto net = make_regressor(net_spec(5, 3, 1e-3), 77);
  Rng rng(6);
  Batch batch;
  for (int k = 0; k < 4; ++k) {
    std::vector<double> f(5);
    for (auto& x : f) x = rng.next_double() < 0.5 ? 0.0 : 1.0;
    batch.push_back(example(std::move(f), {1.0, -1.0, 0.5}, {1, 1, 1}));
  }
  for (int i = 0; i < 10; ++i) net->train_regression(batch);

  std::stringstream buf;
  net->save(buf);
  auto loaded = load_regressor(buf);
  const std::vector<double> probe = {1, 0, 1, 1, 0};
  CHECK(loaded->predict(probe) == net->predict(probe));
  CHECK(loaded->version() == net->version());

  // Adam state round-trips: continued training stays identical.
  loaded->train_regression(batch);
  net->train_regression(batch);
  CHECK(loaded->predict(probe) == net->predict(probe));

  // Tabular round trip.
  auto tab = make_regressor(tabular_spec(3, 2), 0);
  tab->train_regression({example({1, 1, 0}, {2.5, 0.0}, {1, 0})});
  std::stringstream buf2;
  tab->save(buf2);
  auto tab2 = load_regressor(buf2);
  CHECK(tab2->predict({1, 1, 0}) == tab->predict({1, 1, 0}));

  std::stringstream corrupt("ARMACPRxxxxxxxxxxxxxxxx");
  CHECK_THROWS_AS(load_regressor(corrupt), InputError);
}
