#include "armac/approx/regressor.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "armac/util/binary_io.h"
#include "json.hpp"

namespace armac {

namespace {

constexpr char kMagic[8] = {'A', 'R', 'M', 'A', 'C', 'P', 'R', '\x01'};

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::runtime_error(std::string("non-finite ") + what +
                             " in regressor update");
  }
}

nlohmann::json spec_to_json(const RegressorSpec& spec) {
  return nlohmann::json{
      {"kind", spec.kind == RegressorKind::kTabularMean ? "tabular_mean"
                                                        : "feedforward"},
      {"input_width", spec.input_width},
      {"output_width", spec.output_width},
      {"hidden", spec.hidden},
      {"step_size", spec.step_size},
      {"beta1", spec.beta1},
      {"beta2", spec.beta2},
      {"adam_epsilon", spec.adam_epsilon}};
}

RegressorSpec spec_from_json(const nlohmann::json& j) {
  RegressorSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "tabular_mean") {
    spec.kind = RegressorKind::kTabularMean;
  } else if (kind == "feedforward") {
    spec.kind = RegressorKind::kFeedforward;
  } else {
    throw InputError("unknown regressor kind: " + kind);
  }
  spec.input_width = j.at("input_width").get<int>();
  spec.output_width = j.at("output_width").get<int>();
  spec.hidden = j.at("hidden").get<std::vector<int>>();
  spec.step_size = j.at("step_size").get<double>();
  spec.beta1 = j.at("beta1").get<double>();
  spec.beta2 = j.at("beta2").get<double>();
  spec.adam_epsilon = j.at("adam_epsilon").get<double>();
  return spec;
}

}  // namespace

// ---------------------------------------------------------------------------
// Feedforward net
// ---------------------------------------------------------------------------

FeedforwardNet::FeedforwardNet(const RegressorSpec& spec, uint64_t init_seed)
    : spec_(spec) {
  ARMAC_CHECK(spec.kind == RegressorKind::kFeedforward);
  ARMAC_CHECK(spec.input_width > 0 && spec.output_width > 0);

  Rng rng(init_seed);
  int prev = spec.input_width;
  size_t total = 0;
  auto add_slice = [&](const std::string& name, size_t size) {
    params_.slices.push_back({name, total, size});
    total += size;
  };
  for (size_t l = 0; l < spec.hidden.size(); ++l) {
    add_slice("W" + std::to_string(l),
              static_cast<size_t>(spec.hidden[l]) * prev);
    add_slice("b" + std::to_string(l), spec.hidden[l]);
    prev = 2 * spec.hidden[l];  // concatenated rectification doubles width
  }
  add_slice("W_out", static_cast<size_t>(spec.output_width) * prev);
  add_slice("b_out", spec.output_width);
  params_.values.assign(total, 0.0);
  adam_m_.assign(total, 0.0);
  adam_v_.assign(total, 0.0);

  // He-style init on hidden layers; the output layer starts at zero so a
  // fresh net predicts zeros (uniform policies through regret matching).
  prev = spec.input_width;
  for (size_t l = 0; l < spec.hidden.size(); ++l) {
    const auto& slice = params_.slices[2 * l];
    const double scale = std::sqrt(2.0 / prev);
    for (size_t i = 0; i < slice.size; ++i) {
      params_.values[slice.offset + i] = scale * rng.next_gaussian();
    }
    prev = 2 * spec.hidden[l];
  }
}

std::vector<double> FeedforwardNet::forward(
    const std::vector<double>& features,
    std::vector<std::vector<double>>* acts) const {
  ARMAC_CHECK_MSG(static_cast<int>(features.size()) == spec_.input_width,
                  "feature width mismatch");
  const double* p = params_.values.data();
  std::vector<double> a = features;
  if (acts) acts->push_back(a);
  size_t slice = 0;
  for (size_t l = 0; l < spec_.hidden.size(); ++l) {
    const int h = spec_.hidden[l];
    const size_t w_off = params_.slices[slice++].offset;
    const size_t b_off = params_.slices[slice++].offset;
    std::vector<double> z(h);
    const int in = static_cast<int>(a.size());
    for (int r = 0; r < h; ++r) {
      const double* row = p + w_off + static_cast<size_t>(r) * in;
      double acc = p[b_off + r];
      for (int c = 0; c < in; ++c) acc += row[c] * a[c];
      z[r] = acc;
    }
    if (acts) acts->push_back(z);
    std::vector<double> out(2 * h);
    for (int r = 0; r < h; ++r) {
      out[r] = z[r] > 0.0 ? z[r] : 0.0;
      out[h + r] = z[r] < 0.0 ? -z[r] : 0.0;
    }
    a = std::move(out);
    if (acts) acts->push_back(a);
  }
  const size_t w_off = params_.slices[slice++].offset;
  const size_t b_off = params_.slices[slice++].offset;
  std::vector<double> y(spec_.output_width);
  const int in = static_cast<int>(a.size());
  for (int r = 0; r < spec_.output_width; ++r) {
    const double* row = p + w_off + static_cast<size_t>(r) * in;
    double acc = p[b_off + r];
    for (int c = 0; c < in; ++c) acc += row[c] * a[c];
    y[r] = acc;
  }
  return y;
}

std::vector<double> FeedforwardNet::predict(
    const std::vector<double>& features) const {
  return forward(features, nullptr);
}

ActionDistribution FeedforwardNet::predict_distribution(
    const std::vector<double>& features,
    const std::vector<uint8_t>& mask) const {
  const std::vector<double> logits = forward(features, nullptr);
  ARMAC_CHECK(mask.size() == logits.size());
  double max_logit = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < logits.size(); ++i) {
    if (mask[i] && logits[i] > max_logit) max_logit = logits[i];
  }
  ActionDistribution dist;
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    if (!mask[i]) continue;
    const double e = std::exp(logits[i] - max_logit);
    dist.push_back(e);
    sum += e;
  }
  for (double& d : dist) d /= sum;
  return dist;
}

double FeedforwardNet::loss_and_grad(const Batch& batch, Loss kind,
                                     std::vector<double>* grad) const {
  ARMAC_CHECK_MSG(!batch.empty(), "empty batch");
  if (grad) grad->assign(params_.values.size(), 0.0);

  double total_weight = 0.0;
  for (const auto& ex : batch) total_weight += ex.weight;
  ARMAC_CHECK_MSG(total_weight > 0.0, "batch weight must be positive");

  double loss = 0.0;
  std::vector<std::vector<double>> acts;
  for (const auto& ex : batch) {
    acts.clear();
    const std::vector<double> y = forward(ex.features, grad ? &acts : nullptr);
    ARMAC_CHECK(ex.mask.size() == y.size() && ex.target.size() == y.size());

    // dL/dy for this example (already scaled by weight / total weight).
    std::vector<double> dy(y.size(), 0.0);
    const double w = ex.weight / total_weight;
    if (kind == Loss::kRegression) {
      for (size_t o = 0; o < y.size(); ++o) {
        if (!ex.mask[o]) continue;
        const double diff = y[o] - ex.target[o];
        loss += w * diff * diff;
        dy[o] = 2.0 * w * diff;
      }
    } else {
      double max_logit = -std::numeric_limits<double>::infinity();
      for (size_t o = 0; o < y.size(); ++o) {
        if (ex.mask[o] && y[o] > max_logit) max_logit = y[o];
      }
      double z_sum = 0.0;
      for (size_t o = 0; o < y.size(); ++o) {
        if (ex.mask[o]) z_sum += std::exp(y[o] - max_logit);
      }
      const double log_z = std::log(z_sum) + max_logit;
      for (size_t o = 0; o < y.size(); ++o) {
        if (!ex.mask[o]) continue;
        const double log_p = y[o] - log_z;
        const double p = std::exp(log_p);
        loss += w * ex.target[o] * -log_p;
        dy[o] = w * (p - ex.target[o]);
      }
    }
    if (!grad) continue;

    // Backward pass. acts holds [a_0, z_0, a_1, z_1, a_2, ...].
    std::vector<double>& g = *grad;
    const double* p = params_.values.data();
    size_t slice = params_.slices.size();
    std::vector<double> da = std::move(dy);
    {
      const auto& b_slice = params_.slices[--slice];
      const auto& w_slice = params_.slices[--slice];
      const auto& a_in = acts.back();
      const int in = static_cast<int>(a_in.size());
      std::vector<double> da_in(in, 0.0);
      for (int r = 0; r < spec_.output_width; ++r) {
        const double d = da[r];
        if (d == 0.0) continue;
        g[b_slice.offset + r] += d;
        double* gw = g.data() + w_slice.offset + static_cast<size_t>(r) * in;
        const double* pw = p + w_slice.offset + static_cast<size_t>(r) * in;
        for (int c = 0; c < in; ++c) {
          gw[c] += d * a_in[c];
          da_in[c] += d * pw[c];
        }
      }
      da = std::move(da_in);
    }
    for (int l = static_cast<int>(spec_.hidden.size()) - 1; l >= 0; --l) {
      const int h = spec_.hidden[l];
      const auto& z = acts[2 * l + 1];
      const auto& a_in = acts[2 * l];
      // Through the concatenated rectification: da is over [relu(z);
      // relu(-z)].
      std::vector<double> dz(h);
      for (int r = 0; r < h; ++r) {
        dz[r] = (z[r] > 0.0 ? da[r] : 0.0) - (z[r] < 0.0 ? da[h + r] : 0.0);
      }
      const auto& b_slice = params_.slices[--slice];
      const auto& w_slice = params_.slices[--slice];
      const int in = static_cast<int>(a_in.size());
      std::vector<double> da_in(in, 0.0);
      for (int r = 0; r < h; ++r) {
        const double d = dz[r];
        if (d == 0.0) continue;
        g[b_slice.offset + r] += d;
        double* gw = g.data() + w_slice.offset + static_cast<size_t>(r) * in;
        const double* pw = p + w_slice.offset + static_cast<size_t>(r) * in;
        for (int c = 0; c < in; ++c) {
          gw[c] += d * a_in[c];
          da_in[c] += d * pw[c];
        }
      }
      da = std::move(da_in);
    }
  }
  return loss;
}

StepStats FeedforwardNet::adam_step(const Batch& batch, Loss kind) {
  std::vector<double> grad;
  const double loss = loss_and_grad(batch, kind, &grad);
  check_finite(loss, "loss");

  ++adam_steps_;
  const double lr = spec_.step_size;
  const double b1 = spec_.beta1;
  const double b2 = spec_.beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(adam_steps_));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(adam_steps_));
  for (size_t i = 0; i < params_.values.size(); ++i) {
    adam_m_[i] = b1 * adam_m_[i] + (1.0 - b1) * grad[i];
    adam_v_[i] = b2 * adam_v_[i] + (1.0 - b2) * grad[i] * grad[i];
    const double m_hat = adam_m_[i] / bc1;
    const double v_hat = adam_v_[i] / bc2;
    const double next =
        params_.values[i] - lr * m_hat / (std::sqrt(v_hat) + spec_.adam_epsilon);
    check_finite(next, "parameter");
    params_.values[i] = next;
  }
  ++params_.version;
  return {loss};
}

StepStats FeedforwardNet::train_regression(const Batch& batch) {
  return adam_step(batch, Loss::kRegression);
}

StepStats FeedforwardNet::train_classification(const Batch& batch) {
  for (const auto& ex : batch) {
    double sum = 0.0;
    for (size_t o = 0; o < ex.target.size(); ++o) {
      if (ex.mask[o]) {
        if (ex.target[o] < -1e-12) throw InputError("negative target prob");
        sum += ex.target[o];
      }
    }
    if (std::fabs(sum - 1.0) > 1e-6) {
      throw InputError("classification target is not a distribution");
    }
  }
  return adam_step(batch, Loss::kClassification);
}

std::unique_ptr<Regressor> FeedforwardNet::clone() const {
  return std::make_unique<FeedforwardNet>(*this);
}

void FeedforwardNet::save(std::ostream& out) const {
  std::string buf(kMagic, sizeof(kMagic));
  const std::string header = spec_to_json(spec_).dump();
  put_u32(buf, static_cast<uint32_t>(header.size()));
  buf += header;
  put_u64(buf, params_.version);
  put_u64(buf, adam_steps_);
  put_u64(buf, params_.values.size());
  for (double v : params_.values) put_f64(buf, v);
  for (double v : adam_m_) put_f64(buf, v);
  for (double v : adam_v_) put_f64(buf, v);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

// ---------------------------------------------------------------------------
// Tabular mean
// ---------------------------------------------------------------------------

std::string TabularMeanRegressor::key_of(const std::vector<double>& features) {
  std::vector<uint8_t> bits(features.size());
  for (size_t i = 0; i < features.size(); ++i) bits[i] = features[i] != 0.0;
  return pack_bits(bits);
}

std::vector<double> TabularMeanRegressor::predict(
    const std::vector<double>& features) const {
  auto it = table_.find(key_of(features));
  if (it == table_.end()) return std::vector<double>(spec_.output_width, 0.0);
  return it->second.mean;
}

ActionDistribution TabularMeanRegressor::predict_distribution(
    const std::vector<double>& features,
    const std::vector<uint8_t>& mask) const {
  const std::vector<double> mean = predict(features);
  ActionDistribution dist;
  double sum = 0.0;
  for (size_t i = 0; i < mean.size(); ++i) {
    if (!mask[i]) continue;
    dist.push_back(mean[i] > 0.0 ? mean[i] : 0.0);
    sum += dist.back();
  }
  if (sum > 0.0) {
    for (double& d : dist) d /= sum;
  } else {
    for (double& d : dist) d = 1.0 / dist.size();
  }
  return dist;
}

StepStats TabularMeanRegressor::train_regression(const Batch& batch) {
  ARMAC_CHECK_MSG(!batch.empty(), "empty batch");
  double loss = 0.0;
  double total_weight = 0.0;
  for (const auto& ex : batch) total_weight += ex.weight;
  for (const auto& ex : batch) {
    auto& cell = table_[key_of(ex.features)];
    if (cell.mean.empty()) {
      cell.mean.assign(spec_.output_width, 0.0);
      cell.count.assign(spec_.output_width, 0.0);
    }
    for (size_t o = 0; o < ex.target.size(); ++o) {
      if (!ex.mask[o]) continue;
      const double diff = cell.mean[o] - ex.target[o];
      loss += ex.weight * diff * diff / total_weight;
      cell.count[o] += ex.weight;
      cell.mean[o] += ex.weight * (ex.target[o] - cell.mean[o]) / cell.count[o];
    }
  }
  ++version_;
  return {loss};
}

StepStats TabularMeanRegressor::train_classification(const Batch& batch) {
  for (const auto& ex : batch) {
    double sum = 0.0;
    for (size_t o = 0; o < ex.target.size(); ++o) {
      if (ex.mask[o]) {
        if (ex.target[o] < -1e-12) throw InputError("negative target prob");
        sum += ex.target[o];
      }
    }
    if (std::fabs(sum - 1.0) > 1e-6) {
      throw InputError("classification target is not a distribution");
    }
  }
  // Same running-mean update; renormalization happens at prediction time.
  return train_regression(batch);
}

std::unique_ptr<Regressor> TabularMeanRegressor::clone() const {
  return std::make_unique<TabularMeanRegressor>(*this);
}

void TabularMeanRegressor::save(std::ostream& out) const {
  std::string buf(kMagic, sizeof(kMagic));
  const std::string header = spec_to_json(spec_).dump();
  put_u32(buf, static_cast<uint32_t>(header.size()));
  buf += header;
  put_u64(buf, version_);
  put_u64(buf, table_.size());
  for (const auto& [key, cell] : table_) {
    put_bytes(buf, key);
    for (double m : cell.mean) put_f64(buf, m);
    for (double c : cell.count) put_f64(buf, c);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

// ---------------------------------------------------------------------------

std::unique_ptr<Regressor> make_regressor(const RegressorSpec& spec,
                                          uint64_t init_seed) {
  if (spec.kind == RegressorKind::kTabularMean) {
    return std::make_unique<TabularMeanRegressor>(spec);
  }
  return std::make_unique<FeedforwardNet>(spec, init_seed);
}

std::unique_ptr<Regressor> load_regressor(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();
  if (data.size() < sizeof(kMagic) ||
      std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0) {
    throw InputError("bad checkpoint magic/version");
  }
  BufferReader reader(data);
  for (size_t i = 0; i < sizeof(kMagic); ++i) reader.byte();
  const uint32_t header_len = reader.u32();
  std::string header;
  header.reserve(header_len);
  for (uint32_t i = 0; i < header_len; ++i) {
    header.push_back(static_cast<char>(reader.byte()));
  }
  RegressorSpec spec;
  try {
    spec = spec_from_json(nlohmann::json::parse(header));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad checkpoint header: ") + e.what());
  }

  if (spec.kind == RegressorKind::kFeedforward) {
    auto net = std::make_unique<FeedforwardNet>(spec, 0);
    net->params_.version = reader.u64();
    net->adam_steps_ = reader.u64();
    const uint64_t count = reader.u64();
    if (count != net->params_.values.size()) {
      throw InputError("checkpoint parameter count mismatch");
    }
    for (auto& v : net->params_.values) v = reader.f64();
    for (auto& v : net->adam_m_) v = reader.f64();
    for (auto& v : net->adam_v_) v = reader.f64();
    return net;
  }
  auto tab = std::make_unique<TabularMeanRegressor>(spec);
  tab->version_ = reader.u64();
  const uint64_t entries = reader.u64();
  for (uint64_t i = 0; i < entries; ++i) {
    const std::string key = reader.bytes();
    TabularMeanRegressor::Cell cell;
    cell.mean.resize(spec.output_width);
    cell.count.resize(spec.output_width);
    for (auto& m : cell.mean) m = reader.f64();
    for (auto& c : cell.count) c = reader.f64();
    tab->table_.emplace(key, std::move(cell));
  }
  return tab;
}

void save_regressor_file(const Regressor& reg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  reg.save(out);
}

std::unique_ptr<Regressor> load_regressor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open for reading: " + path);
  return load_regressor(in);
}

}  // namespace armac
