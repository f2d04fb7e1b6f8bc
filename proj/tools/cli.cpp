#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "gapforge/gapforge.hpp"

namespace gapforge::cli {
namespace {

constexpr const char* kSeedEnv = "GAPFORGE_SEED";

// Raised for input problems that are not library errors (bad env values).
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw BadInput(std::string(kSeedEnv) + " is not an unsigned integer: " + env);
  }
}

void emit(const std::string& out_path, const std::string& text, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

GapFragment load_gap(const std::string& gap_path, const std::string& manifest_path) {
  if (!gap_path.empty()) return parse_gap_fragment(read_json_file(gap_path));
  return parse_gap_fragment(read_json_file(read_manifest(manifest_path).gap));
}

Json rectangle_json(const CompatMatrix& m, const Rectangle& r) {
  Json rows = Json::array(), cols = Json::array();
  for (std::size_t x : r.rows) rows.push_back(to_json(m.row_index[x]));
  for (std::size_t y : r.cols) cols.push_back(to_json(m.col_index[y]));
  return {{"rows", rows}, {"cols", cols}, {"size", r.size()}, {"verified", verify_rectangle(m, r)}};
}

struct SimulateP {
  std::size_t indices = 0;
  std::size_t height = 0;
  std::uint32_t block = 5;
  std::optional<std::uint64_t> seed;
  std::string out;

  int run(std::ostream& out_stream) const {
    const auto ordinals = desk_ordinals(indices, block);
    const std::uint64_t s = resolve_seed(seed);
    SimRun<PCondition> sim;
    try {
      sim = build_filter(PPoset{}, PCondition{},
                         p_standard_schedule(OrdinalSet(ordinals.begin(), ordinals.end()), height, s), s);
    } catch (const Error& e) {
      throw std::runtime_error(e.what());  // simulation failure, not bad input
    }
    emit(out, dump(to_json(extract_gap_fragment(sim.result))), out_stream);
    return kOk;
  }
};

struct Check {
  std::string predicate;
  std::string manifest;
  std::string gap;
  std::size_t n0 = 0;
  std::string out;
  std::string csv;

  int run(std::ostream& out_stream) const {
    Json report{{"predicate", predicate}};
    bool holds = false;
    GapFragment g;
    if (predicate == "c-hausdorff") {
      if (manifest.empty()) throw BadInput("c-hausdorff needs --manifest");
      const auto files = load_context_files(read_manifest(manifest));
      g = files.gap;
      const auto results = c_hausdorff_check(g, files.ladder, files.partition);
      Json witnesses = Json::array(), failures = Json::array();
      for (const auto& [key, result] : results) {
        (std::holds_alternative<CHWitness>(result) ? witnesses : failures).push_back(to_json(result));
      }
      holds = failures.empty();
      report["witnesses"] = witnesses;
      report["failures"] = failures;
    } else {
      if (manifest.empty() && gap.empty()) throw BadInput(predicate + " needs --gap or --manifest");
      g = load_gap(gap, manifest);
      report["n0"] = n0;
      if (predicate == "special") {
        holds = special_gap_check(g, n0);
      } else {
        const auto x = uniform_interpolation(g, n0);
        holds = x.has_value();
        report["x"] = x ? Json(x->members()) : Json(nullptr);
        std::size_t worst = 0;
        for (const auto& row : excess_matrix(g)) {
          for (std::size_t e : row) worst = std::max(worst, e);
        }
        report["max_excess"] = worst;
      }
    }
    report["holds"] = holds;
    if (!csv.empty()) write_text_file(csv, excess_matrix_csv(g));
    emit(out, dump(report), out_stream);
    return holds ? kOk : kPredicateFalse;
  }
};

struct Oracle {
  std::string poset;
  std::string left;
  std::string right;
  std::string manifest;
  std::size_t cap = kDefaultOracleCap;
  std::string out;

  int run(std::ostream& out_stream) const {
    const Json lhs = read_json_file(left);
    const Json rhs = read_json_file(right);
    Json report{{"poset", poset}};
    if (poset == "p") {
      const PCondition p = parse_p_condition(lhs);
      const PCondition q = parse_p_condition(rhs);
      const auto witness = p_compatible_oracle(p, q, cap);  // SearchTooLarge propagates
      report["compatible"] = witness.has_value();
      report["witness"] = witness ? to_json(*witness) : Json(nullptr);
    } else {
      if (manifest.empty()) throw BadInput("oracle q needs --manifest");
      auto files = load_context_files(read_manifest(manifest));
      const QContext ctx(std::move(files.gap), std::move(files.ladder), std::move(files.partition));
      const QCondition p = parse_q_condition(lhs);
      const QCondition q = parse_q_condition(rhs);
      validate_condition(ctx, p);
      validate_condition(ctx, q);
      const auto witness = q_compatible(ctx, p, q);
      report["compatible"] = witness.has_value();
      report["witness"] = witness ? to_json(*witness) : Json(nullptr);
    }
    emit(out, dump(report), out_stream);
    return report["compatible"].get<bool>() ? kOk : kPredicateFalse;
  }
};

struct Pipeline {
  PipelineParams params;
  std::string ladder;
  std::string partition;
  std::optional<std::uint64_t> seed;
  std::string out;

  int run(std::ostream& out_stream, std::ostream& err) const {
    const Ladder l = ladder.empty() ? Ladder::canonical() : parse_ladder(read_json_file(ladder));
    SPartition part;
    if (partition.empty()) {
      const auto ords = desk_ordinals(params.indices, params.block);
      part = alternating_partition(ords.empty() ? 0 : ords.back().q);
    } else {
      part = parse_partition(read_json_file(partition));
    }
    PipelineReport report;
    try {
      report = pipeline(params, l, part, resolve_seed(seed));
    } catch (const Error& e) {
      // A ladder that cannot serve the partition is an input problem.
      if (e.code() == ErrorCode::kTableTooShort || e.code() == ErrorCode::kUnknownDelta) throw;
      throw std::runtime_error(e.what());
    }
    emit(out, dump(to_json(report)), out_stream);
    for (const auto& v : report.violations) err << "assertion failed: " << v << "\n";
    return report.ok() ? kOk : kRunFailure;
  }
};

struct Pcc {
  std::size_t size = 30;
  std::size_t universe = 24;
  std::string matrix;
  std::optional<std::uint64_t> seed;
  std::size_t budget = 1'000'000;
  std::string out;

  int run(std::ostream& out_stream, std::ostream& err) const {
    Json report;
    std::vector<std::string> violations;
    if (!matrix.empty()) {
      const CompatMatrix m = parse_compat_matrix_csv(read_text_file(matrix));
      const Rectangle r = max_order_rectangle(m, budget);
      report["rectangle"] = rectangle_json(m, r);
      if (!verify_rectangle(m, r)) violations.push_back("rectangle verification");
    } else {
      const std::uint64_t s = resolve_seed(seed);
      const auto gen = generate_pcc_instance({size, universe, 3}, s);
      const PccInstance& inst = gen->instance;
      const CompatMatrix m = build_compat_matrix(gen->ctx, inst.t1, inst.fam1, inst.t2, inst.fam2);
      const Rectangle r = max_order_rectangle(m, budget);
      report["seed"] = s;
      report["k"] = inst.k;
      report["gamma"] = to_json(inst.gamma);
      report["matrix_csv"] = compat_matrix_csv(m);
      report["rectangle"] = rectangle_json(m, r);
      if (!verify_rectangle(m, r)) violations.push_back("rectangle verification");
      if (const auto pair = find_compatible_pair(inst)) {
        const QContext& ctx = gen->ctx;
        auto member = [](const std::vector<Ordinal>& idx, const std::vector<QCondition>& fam, Ordinal d) {
          return fam[static_cast<std::size_t>(std::find(idx.begin(), idx.end(), d) - idx.begin())];
        };
        const bool valid = q_leq(ctx, member(inst.t1, inst.fam1, pair->delta1), pair->witness) &&
                           q_leq(ctx, member(inst.t2, inst.fam2, pair->delta2), pair->witness);
        report["pair"] = {{"delta1", to_json(pair->delta1)},
                          {"delta2", to_json(pair->delta2)},
                          {"n", pair->n},
                          {"witness", to_json(pair->witness)},
                          {"witness_valid", valid}};
        if (!valid) violations.push_back("compatible pair witness");
      } else {
        report["pair"] = nullptr;
        violations.push_back("compatible pair found");
      }
    }
    report["violations"] = violations;
    report["ok"] = violations.empty();
    emit(out, dump(report), out_stream);
    for (const auto& v : violations) err << "assertion failed: " << v << "\n";
    return violations.empty() ? kOk : kRunFailure;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gapforge: finite-scale gap and forcing-poset toolkit"};
  app.require_subcommand(1);

  SimulateP sim;
  auto* sim_cmd = app.add_subcommand("simulate-p", "Run the P-filter simulation and write the fragment");
  sim_cmd->add_option("--indices", sim.indices, "Number of ordinals")->required();
  sim_cmd->add_option("--height", sim.height, "Target height")->required();
  sim_cmd->add_option("--block", sim.block, "Finite parts per omega-block")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "Seed (overrides GAPFORGE_SEED)");
  sim_cmd->add_option("--out", sim.out, "Fragment JSON path")->required();

  Check check;
  auto* check_cmd = app.add_subcommand("check", "Evaluate a gap predicate");
  check_cmd->add_option("predicate", check.predicate, "c-hausdorff | special | interpolate")
      ->required()
      ->check(CLI::IsMember({"c-hausdorff", "special", "interpolate"}));
  check_cmd->add_option("--manifest", check.manifest, "Context manifest JSON");
  check_cmd->add_option("--gap", check.gap, "Gap fragment JSON (special, interpolate)");
  check_cmd->add_option("--n0", check.n0, "Uniform threshold n0");
  check_cmd->add_option("--out", check.out, "Report path (default stdout)");
  check_cmd->add_option("--csv", check.csv, "Also write the excess matrix as CSV");

  Oracle oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Decide compatibility of two conditions");
  oracle_cmd->add_option("poset", oracle.poset, "p | q")->required()->check(CLI::IsMember({"p", "q"}));
  oracle_cmd->add_option("--left", oracle.left, "First condition JSON")->required();
  oracle_cmd->add_option("--right", oracle.right, "Second condition JSON")->required();
  oracle_cmd->add_option("--manifest", oracle.manifest, "Context manifest (q only)");
  oracle_cmd->add_option("--cap", oracle.cap, "Free-bit cap for the P search");
  oracle_cmd->add_option("--out", oracle.out, "Report path (default stdout)");

  Pipeline pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "P-simulation, then Q-simulation, then C-Hausdorff check");
  pipe_cmd->add_option("--indices", pipe.params.indices, "Number of ordinals");
  pipe_cmd->add_option("--height", pipe.params.height, "P target height");
  pipe_cmd->add_option("--block", pipe.params.block, "Finite parts per omega-block")->check(CLI::PositiveNumber);
  pipe_cmd->add_option("--w-target", pipe.params.w_target, "Target |W|");
  pipe_cmd->add_option("--ladder", pipe.ladder, "Ladder JSON (default canonical)");
  pipe_cmd->add_option("--partition", pipe.partition, "Partition JSON (default alternating)");
  pipe_cmd->add_option("--seed", pipe.seed, "Seed (overrides GAPFORGE_SEED)");
  pipe_cmd->add_option("--out", pipe.out, "Report path (default stdout)");

  Pcc pcc;
  auto* pcc_cmd = app.add_subcommand("pcc", "Chain-condition lab: generated instance or rectangle on a matrix");
  pcc_cmd->add_option("--size", pcc.size, "Family size |T1| = |T2|");
  pcc_cmd->add_option("--universe", pcc.universe, "Universe size");
  pcc_cmd->add_option("--matrix", pcc.matrix, "Compatibility matrix CSV; skips generation");
  pcc_cmd->add_option("--budget", pcc.budget, "Greedy step budget");
  pcc_cmd->add_option("--seed", pcc.seed, "Seed (overrides GAPFORGE_SEED)");
  pcc_cmd->add_option("--out", pcc.out, "Report path (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  try {
    if (*sim_cmd) return sim.run(out);
    if (*check_cmd) return check.run(out);
    if (*oracle_cmd) return oracle.run(out);
    if (*pipe_cmd) return pipe.run(out, err);
    if (*pcc_cmd) return pcc.run(out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kSearchTooLarge ? kSearchTooLarge : kBadInput;
  } catch (const BadInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kRunFailure;
  }
  return kBadInput;
}

}  // namespace gapforge::cli
