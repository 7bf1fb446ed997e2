#pragma once

#include <iosfwd>

#include "armac/sampling/episode.h"

namespace armac {

// Length-prefixed binary episode format (magic "ARMACEP\x01", little
// endian throughout). Byte layout documented in docs/formats.md.
void write_episodes(std::ostream& out,
                    const std::vector<EpisodeRecord>& records);
std::vector<EpisodeRecord> read_episodes(std::istream& in);

void write_episodes_file(const std::string& path,
                         const std::vector<EpisodeRecord>& records);
std::vector<EpisodeRecord> read_episodes_file(const std::string& path);

}  // namespace armac
