#include "gapforge/json_io.hpp"

#include <fstream>
#include <sstream>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

template <typename Fn>
auto parsing(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

std::uint32_t as_u32(const Json& j) {
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v > static_cast<std::int64_t>(UINT32_MAX)) {
    throw Error(ErrorCode::kParseError, "ordinal component out of range: " + j.dump());
  }
  return static_cast<std::uint32_t>(v);
}

Json set_to_json(const FinSet& s) { return s.members(); }

FinSet set_from_json(const Json& j) {
  FinSet out;
  for (const Json& x : j) {
    const auto v = x.get<std::int64_t>();
    if (v < 0) throw Error(ErrorCode::kParseError, "negative set member");
    out.insert(static_cast<std::size_t>(v));
  }
  return out;
}

Json tower_to_json(const std::map<Ordinal, FinSet>& tower) {
  Json out = Json::object();
  for (const auto& [i, set] : tower) out[to_key(i)] = set_to_json(set);
  return out;
}

}  // namespace

Json to_json(Ordinal x) { return Json::array({x.q, x.r}); }

Json to_json(const Index& i) { return {{"ord", to_json(i.ord)}, {"side", i.side}}; }

Json to_json(const OrdinalSet& xs) {
  Json out = Json::array();
  for (const Ordinal& x : xs) out.push_back(to_json(x));
  return out;
}

Json to_json(const Ladder& ladder) {
  if (ladder.mode() == Ladder::Mode::kCanonical) return {{"mode", "canonical"}};
  Json entries = Json::array();
  for (const auto& [delta, values] : ladder.entries()) {
    Json vs = Json::array();
    for (const Ordinal& v : values) vs.push_back(to_json(v));
    entries.push_back({{"delta", to_json(delta)}, {"values", vs}});
  }
  return {{"mode", "explicit"}, {"entries", entries}};
}

Json to_json(const SPartition& part) {
  return {{"S", to_json(part.S)}, {"T", to_json(part.T)}, {"D", to_json(part.D)}};
}

Json to_json(const GapFragment& g) {
  return {{"universe", g.universe},
          {"I", to_json(g.I())},
          {"J", to_json(g.J())},
          {"a", tower_to_json(g.a)},
          {"b", tower_to_json(g.b)}};
}

Json to_json(const PCondition& p) {
  Json entries = Json::array();
  for (const auto& [alpha, words] : p.entries()) {
    entries.push_back({{"ord", to_json(alpha)},
                       {"a_bits", words.lower.to_bits(p.height())},
                       {"b_bits", words.upper.to_bits(p.height())}});
  }
  return {{"height", p.height()}, {"entries", entries}};
}

Json to_json(const QCondition& p) { return {{"w", to_json(p.w)}, {"s", to_json(p.s)}}; }

Json to_json(const CHResult& result) {
  if (const auto* w = std::get_if<CHWitness>(&result)) {
    return {{"delta", to_json(w->delta)}, {"j", to_json(w->j)}, {"k", w->k}, {"n_star", w->n_star}};
  }
  const auto& f = std::get<CHFailure>(result);
  return {{"delta", to_json(f.delta)},
          {"j", to_json(f.j)},
          {"n_star", f.n_star},
          {"failing_level", f.failing_level},
          {"failing_i", to_json(f.failing_i)}};
}

Json to_json(const PipelineReport& report) {
  Json witnesses = Json::array();
  Json failures = Json::array();
  for (const auto& [key, result] : report.c_hausdorff) {
    (std::holds_alternative<CHWitness>(result) ? witnesses : failures).push_back(to_json(result));
  }
  return {{"seed", report.seed},
          {"fragment", to_json(report.fragment)},
          {"W", to_json(report.W)},
          {"witnesses", witnesses},
          {"failures", failures},
          {"excess_csv", report.excess_csv},
          {"violations", report.violations},
          {"ok", report.ok()}};
}

Ordinal parse_ordinal(const Json& j) {
  return parsing("ordinal", [&] {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParseError, "ordinal must be [q, r]");
    return Ordinal{as_u32(j.at(0)), as_u32(j.at(1))};
  });
}

Index parse_index(const Json& j) {
  return parsing("index", [&] {
    const auto side = j.at("side").get<int>();
    if (side != 0 && side != 1) throw Error(ErrorCode::kParseError, "index side must be 0 or 1");
    return Index{parse_ordinal(j.at("ord")), static_cast<std::uint8_t>(side)};
  });
}

OrdinalSet parse_ordinal_set(const Json& j) {
  return parsing("ordinal list", [&] {
    if (!j.is_array()) throw Error(ErrorCode::kParseError, "expected an array of ordinals");
    OrdinalSet out;
    for (const Json& x : j) out.insert(parse_ordinal(x));
    return out;
  });
}

Ladder parse_ladder(const Json& j) {
  return parsing("ladder", [&] {
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "canonical") return Ladder::canonical();
    if (mode != "explicit") throw Error(ErrorCode::kParseError, "unknown ladder mode " + mode);
    std::map<Ordinal, std::vector<Ordinal>> tables;
    for (const Json& e : j.at("entries")) {
      std::vector<Ordinal> values;
      for (const Json& v : e.at("values")) values.push_back(parse_ordinal(v));
      if (!tables.emplace(parse_ordinal(e.at("delta")), std::move(values)).second) {
        throw Error(ErrorCode::kParseError, "duplicate ladder entry");
      }
    }
    return Ladder::explicit_tables(std::move(tables));
  });
}

SPartition parse_partition(const Json& j) {
  return parsing("partition", [&] {
    SPartition part{parse_ordinal_set(j.at("S")), parse_ordinal_set(j.at("T")),
                    parse_ordinal_set(j.at("D"))};
    part.validate();
    return part;
  });
}

GapFragment parse_gap_fragment(const Json& j) {
  return parsing("gap fragment", [&] {
    GapFragment g;
    const auto universe = j.at("universe").get<std::int64_t>();
    if (universe < 0) throw Error(ErrorCode::kParseError, "negative universe");
    g.universe = static_cast<std::size_t>(universe);
    for (const auto& [key, value] : j.at("a").items()) g.a.emplace(ordinal_from_key(key), set_from_json(value));
    for (const auto& [key, value] : j.at("b").items()) g.b.emplace(ordinal_from_key(key), set_from_json(value));
    if (parse_ordinal_set(j.at("I")) != g.I() || parse_ordinal_set(j.at("J")) != g.J()) {
      throw Error(ErrorCode::kParseError, "I/J lists disagree with the keys of a/b");
    }
    g.validate();
    return g;
  });
}

PCondition parse_p_condition(const Json& j) {
  return parsing("P-condition", [&] {
    const auto height = j.at("height").get<std::int64_t>();
    if (height < 0) throw Error(ErrorCode::kParseError, "negative height");
    std::map<Ordinal, PWords> entries;
    for (const Json& e : j.at("entries")) {
      const auto a_bits = e.at("a_bits").get<std::string>();
      const auto b_bits = e.at("b_bits").get<std::string>();
      if (a_bits.size() != static_cast<std::size_t>(height) ||
          b_bits.size() != static_cast<std::size_t>(height)) {
        throw Error(ErrorCode::kParseError, "bit strings must have length exactly the height");
      }
      if (!entries.emplace(parse_ordinal(e.at("ord")), PWords{FinSet::from_bits(a_bits), FinSet::from_bits(b_bits)})
               .second) {
        throw Error(ErrorCode::kParseError, "duplicate ordinal in entries");
      }
    }
    return PCondition(static_cast<std::size_t>(height), std::move(entries));
  });
}

QCondition parse_q_condition(const Json& j) {
  return parsing("Q-condition", [&] {
    return QCondition{parse_ordinal_set(j.at("w")), parse_ordinal_set(j.at("s"))};
  });
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(std::string_view text) {
  return parsing("json", [&] { return Json::parse(text); });
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << text;
}

Json read_json_file(const std::filesystem::path& path) { return parse_json_text(read_text_file(path)); }

ContextManifest read_manifest(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  const auto base = path.parent_path();
  return parsing("manifest", [&] {
    auto resolve = [&](const char* key) {
      std::filesystem::path p = j.at(key).get<std::string>();
      return p.is_absolute() ? p : base / p;
    };
    return ContextManifest{resolve("gap"), resolve("ladder"), resolve("partition")};
  });
}

ContextFiles load_context_files(const ContextManifest& manifest) {
  return ContextFiles{parse_gap_fragment(read_json_file(manifest.gap)),
                      parse_ladder(read_json_file(manifest.ladder)),
                      parse_partition(read_json_file(manifest.partition))};
}

}  // namespace gapforge
