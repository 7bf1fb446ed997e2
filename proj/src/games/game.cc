#include "armac/games/game.h"

#include <algorithm>

namespace armac {

std::string pack_bits(const std::vector<uint8_t>& bits) {
  std::string out((bits.size() + 7) / 8, '\0');
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<char>(1 << (i % 8));
  }
  return out;
}

std::vector<uint8_t> unpack_bits(const std::string& bytes, int num_bits) {
  std::vector<uint8_t> bits(num_bits, 0);
  for (int i = 0; i < num_bits; ++i) {
    bits[i] = (bytes[i / 8] >> (i % 8)) & 1;
  }
  return bits;
}

std::string hex_encode(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

std::string hex_decode(const std::string& hex) {
  ARMAC_CHECK_MSG(hex.size() % 2 == 0, "odd hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw InputError("invalid hex digit");
  };
  std::string out(hex.size() / 2, '\0');
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<char>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  }
  return out;
}

void State::apply_action(Action a) {
  ARMAC_CHECK_MSG(!is_terminal(), "apply_action on terminal state");
  if (is_chance()) {
    bool found = false;
    for (const auto& [outcome, prob] : chance_outcomes()) {
      if (outcome == a) {
        found = true;
        break;
      }
    }
    ARMAC_CHECK_MSG(found, "unknown chance outcome");
  } else {
    const auto legal = legal_actions();
    ARMAC_CHECK_MSG(std::find(legal.begin(), legal.end(), a) != legal.end(),
                    "illegal action");
  }
  history_.emplace_back(current_player_, a);
  do_apply(a);
}

InfoStateKey State::info_state_key(PlayerId player) const {
  ARMAC_CHECK(player >= 0 && player < descriptor().num_players);
  std::vector<uint8_t> bits;
  write_observation_bits(player, bits);
  InfoStateKey key;
  key.player = player;
  key.bytes = pack_bits(bits);
  return key;
}

HistoryKey State::history_key() const {
  const int n = descriptor().num_players;
  std::vector<uint8_t> all;
  all.reserve(static_cast<size_t>(n) * descriptor().observation_bits);
  std::vector<uint8_t> bits;
  for (PlayerId p = 0; p < n; ++p) {
    write_observation_bits(p, bits);
    all.insert(all.end(), bits.begin(), bits.end());
  }
  return pack_bits(all);
}

int info_feature_width(const GameDescriptor& d) {
  return d.num_players + d.observation_bits;
}

int history_feature_width(const GameDescriptor& d) {
  return d.num_players * d.observation_bits;
}

std::vector<double> info_features_from_key(const InfoStateKey& key,
                                           const GameDescriptor& d) {
  std::vector<double> f(info_feature_width(d), 0.0);
  f[key.player] = 1.0;
  const auto bits = unpack_bits(key.bytes, d.observation_bits);
  for (int i = 0; i < d.observation_bits; ++i) {
    f[d.num_players + i] = bits[i];
  }
  return f;
}

std::vector<double> history_features_from_key(const HistoryKey& key,
                                              const GameDescriptor& d) {
  const int width = history_feature_width(d);
  std::vector<double> f(width, 0.0);
  const auto bits = unpack_bits(key, width);
  for (int i = 0; i < width; ++i) f[i] = bits[i];
  return f;
}

std::vector<double> info_features(const State& state, PlayerId player) {
  return info_features_from_key(state.info_state_key(player),
                                state.descriptor());
}

std::vector<double> history_features(const State& state) {
  return history_features_from_key(state.history_key(), state.descriptor());
}

}  // namespace armac
