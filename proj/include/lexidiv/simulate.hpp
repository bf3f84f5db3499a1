#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexidiv/measures.hpp"
#include "lexidiv/textproc.hpp"

namespace lexidiv::simulate {

struct Moment {
  double mean = 0.0;
  double sd = 0.0;
};

struct GroupMoments {
  std::string group;
  std::optional<std::size_t> n;         // preferred sample size, if any
  std::array<Moment, 6> moments{};      // indexed by measures::Measure

  const Moment& operator[](measures::Measure m) const { return moments[static_cast<std::size_t>(m)]; }
  Moment& operator[](measures::Measure m) { return moments[static_cast<std::size_t>(m)]; }
};

// Reference per-group means and sds: twelve writer groups (n = 30 each).
std::vector<GroupMoments> twelve_group_moments();
// Reference pooled moments: "llm" (n = 120) and "human" (n = 240).
std::vector<GroupMoments> pooled_moments();

// Schema: {"groups": [{"group": key, "n": optional int,
//                      "<measure>": {"mean": x, "sd": y}, ... all six}]}
// Throws ValidationError on schema or domain violations.
std::vector<GroupMoments> moments_from_json(std::string_view text);
std::string moments_to_json(std::span<const GroupMoments> moments);

// Independent normal draws per measure, clamped onto each measure's domain.
// Every group draws from its own stream seeded by (seed, group key), so a
// group's rows do not depend on which other groups are sampled.
std::vector<measures::ProfiledText> sample_profiles(std::span<const GroupMoments> moments, std::size_t n_per_group,
                                                    std::uint64_t seed);
// Per-group sizes; counts.size() must equal moments.size().
std::vector<measures::ProfiledText> sample_profiles(std::span<const GroupMoments> moments,
                                                    std::span<const std::size_t> counts, std::uint64_t seed);

struct ZipfSpec {
  std::size_t vocabulary = 1;
  double exponent = 1.0;
  std::size_t length = 1;
  std::uint64_t seed = 0;
};

// `length` i.i.d. draws over lemmas w1..wV with P(r) proportional to r^-s.
text::LemmaSequence zipf_text(const ZipfSpec& spec);

}  // namespace lexidiv::simulate
