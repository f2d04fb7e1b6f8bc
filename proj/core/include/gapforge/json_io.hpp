#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gapforge/gap.hpp"
#include "gapforge/generic_sim.hpp"
#include "gapforge/ordinal.hpp"
#include "gapforge/poset_p.hpp"
#include "gapforge/poset_q.hpp"

namespace gapforge {

using Json = nlohmann::json;

// Encoders. Ordinal sets serialize as ascending arrays of [q, r].
Json to_json(Ordinal x);
Json to_json(const Index& i);
Json to_json(const OrdinalSet& xs);
Json to_json(const Ladder& ladder);
Json to_json(const SPartition& part);
Json to_json(const GapFragment& g);
Json to_json(const PCondition& p);
Json to_json(const QCondition& p);
Json to_json(const CHResult& result);
Json to_json(const PipelineReport& report);

// Decoders throw ParseError on malformed input and keep the domain errors
// (InvalidCondition, InvalidArgument) of the validated types.
Ordinal parse_ordinal(const Json& j);
Index parse_index(const Json& j);
OrdinalSet parse_ordinal_set(const Json& j);
Ladder parse_ladder(const Json& j);
SPartition parse_partition(const Json& j);
GapFragment parse_gap_fragment(const Json& j);
PCondition parse_p_condition(const Json& j);
QCondition parse_q_condition(const Json& j);

// Two-space indented with a trailing newline; keys come out sorted.
std::string dump(const Json& j);
Json parse_json_text(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
Json read_json_file(const std::filesystem::path& path);

// {"gap": path, "ladder": path, "partition": path}; relative paths resolve
// against the manifest's directory.
struct ContextManifest {
  std::filesystem::path gap;
  std::filesystem::path ladder;
  std::filesystem::path partition;
};

ContextManifest read_manifest(const std::filesystem::path& path);

struct ContextFiles {
  GapFragment gap;
  Ladder ladder = Ladder::canonical();
  SPartition partition;
};

ContextFiles load_context_files(const ContextManifest& manifest);

}  // namespace gapforge
