#include "armac/sampling/episode_io.h"

#include <cstring>
#include <fstream>

#include "armac/util/binary_io.h"

namespace armac {

namespace {

constexpr char kMagic[8] = {'A', 'R', 'M', 'A', 'C', 'E', 'P', '\x01'};

std::string encode_record(const EpisodeRecord& r) {
  std::string buf;
  buf.push_back(static_cast<char>(r.learner));
  put_u32(buf, static_cast<uint32_t>(r.snapshot_index));
  buf.push_back(
      static_cast<char>((r.head_eligible ? 1 : 0) | (r.truncated ? 2 : 0)));
  buf.push_back(static_cast<char>(r.returns.size()));
  for (double u : r.returns) put_f64(buf, u);
  put_u64(buf, r.seed_id);
  put_bytes(buf, r.final_history_key);
  buf.push_back(static_cast<char>(r.final_info_key.player));
  put_bytes(buf, r.final_info_key.bytes);
  buf.push_back(static_cast<char>(r.final_legal.size()));
  for (Action a : r.final_legal) {
    buf.push_back(static_cast<char>(a & 0xff));
    buf.push_back(static_cast<char>((a >> 8) & 0xff));
  }
  put_u32(buf, static_cast<uint32_t>(r.steps.size()));
  for (const auto& s : r.steps) {
    buf.push_back(static_cast<char>(s.acting));
    put_bytes(buf, s.info_key.bytes);
    put_bytes(buf, s.history_key);
    buf.push_back(static_cast<char>(s.legal.size()));
    for (Action a : s.legal) {
      buf.push_back(static_cast<char>(a & 0xff));
      buf.push_back(static_cast<char>((a >> 8) & 0xff));
    }
    buf.push_back(static_cast<char>(s.action_pos));
    for (double v : s.advantages) put_f64(buf, v);
    for (double v : s.snapshot_policy) put_f64(buf, v);
  }
  return buf;
}

EpisodeRecord decode_record(const std::string& payload) {
  BufferReader in(payload);
  EpisodeRecord r;
  r.learner = in.byte();
  r.snapshot_index = static_cast<int>(in.u32());
  const uint8_t flags = in.byte();
  r.head_eligible = flags & 1;
  r.truncated = flags & 2;
  const int n = in.byte();
  r.returns.resize(n);
  for (double& u : r.returns) u = in.f64();
  r.seed_id = in.u64();
  r.final_history_key = in.bytes();
  r.final_info_key.player = in.byte();
  r.final_info_key.bytes = in.bytes();
  const int num_final_legal = in.byte();
  r.final_legal.resize(num_final_legal);
  for (Action& a : r.final_legal) {
    a = in.byte();
    a |= static_cast<Action>(in.byte()) << 8;
  }
  const uint32_t num_steps = in.u32();
  r.steps.resize(num_steps);
  for (auto& s : r.steps) {
    s.acting = in.byte();
    s.info_key.player = s.acting;
    s.info_key.bytes = in.bytes();
    s.history_key = in.bytes();
    const int num_legal = in.byte();
    s.legal.resize(num_legal);
    for (Action& a : s.legal) {
      a = in.byte();
      a |= static_cast<Action>(in.byte()) << 8;
    }
    s.action_pos = in.byte();
    if (s.action_pos < 0 || s.action_pos >= num_legal) {
      throw InputError("corrupt episode step");
    }
    s.action = s.legal[s.action_pos];
    s.advantages.resize(num_legal);
    for (double& v : s.advantages) v = in.f64();
    s.snapshot_policy.resize(num_legal);
    for (double& v : s.snapshot_policy) v = in.f64();
  }
  if (!in.done()) throw InputError("trailing bytes in episode record");
  return r;
}

}  // namespace

void write_episodes(std::ostream& out,
                    const std::vector<EpisodeRecord>& records) {
  out.write(kMagic, sizeof(kMagic));
  for (const auto& r : records) {
    const std::string payload = encode_record(r);
    std::string len;
    put_u32(len, static_cast<uint32_t>(payload.size()));
    out.write(len.data(), 4);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  }
}

std::vector<EpisodeRecord> read_episodes(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0) {
    throw InputError("bad episode file magic/version");
  }
  std::vector<EpisodeRecord> records;
  for (;;) {
    char lenbuf[4];
    in.read(lenbuf, 4);
    if (in.gcount() == 0) break;
    if (in.gcount() != 4) throw InputError("truncated episode file");
    uint32_t len = 0;
    for (int i = 0; i < 4; ++i) {
      len |= static_cast<uint32_t>(static_cast<uint8_t>(lenbuf[i])) << (8 * i);
    }
    std::string payload(len, '\0');
    in.read(payload.data(), len);
    if (static_cast<uint32_t>(in.gcount()) != len) {
      throw InputError("truncated episode record");
    }
    records.push_back(decode_record(payload));
  }
  return records;
}

void write_episodes_file(const std::string& path,
                         const std::vector<EpisodeRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  write_episodes(out, records);
}

std::vector<EpisodeRecord> read_episodes_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open for reading: " + path);
  return read_episodes(in);
}

}  // namespace armac
