#include "gapforge/pcc_lab.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gapforge/error.hpp"
#include "gapforge/rng.hpp"

namespace gapforge {
namespace {

bool increasing(const std::vector<Ordinal>& xs) {
  return std::adjacent_find(xs.begin(), xs.end(),
                            [](const Ordinal& x, const Ordinal& y) { return !(x < y); }) == xs.end();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

CompatMatrix build_compat_matrix(const QContext& ctx, const std::vector<Ordinal>& t1,
                                 const std::vector<QCondition>& fam1,
                                 const std::vector<Ordinal>& t2,
                                 const std::vector<QCondition>& fam2) {
  if (t1.size() != fam1.size() || t2.size() != fam2.size()) {
    throw Error(ErrorCode::kInvalidArgument, "index lists and families differ in length");
  }
  CompatMatrix m{t1, t2, {}};
  m.cells.assign(fam1.size(), std::vector<bool>(fam2.size(), false));
  for (std::size_t x = 0; x < fam1.size(); ++x) {
    for (std::size_t y = 0; y < fam2.size(); ++y) {
      m.cells[x][y] = q_compatible(ctx, fam1[x], fam2[y]).has_value();
    }
  }
  return m;
}

std::string compat_matrix_csv(const CompatMatrix& m) {
  std::string out = "row\\col";
  for (const Ordinal& c : m.col_index) out += "," + to_key(c);
  out += "\n";
  for (std::size_t x = 0; x < m.rows(); ++x) {
    out += to_key(m.row_index[x]);
    for (std::size_t y = 0; y < m.cols(); ++y) out += m.cells[x][y] ? ",1" : ",0";
    out += "\n";
  }
  return out;
}

CompatMatrix parse_compat_matrix_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "empty matrix CSV");
  CompatMatrix m;
  const auto header = split(line, ',');
  for (std::size_t y = 1; y < header.size(); ++y) m.col_index.push_back(ordinal_from_key(header[y]));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParseError, "matrix row has " + std::to_string(cells.size()) +
                                              " cells, header has " + std::to_string(header.size()));
    }
    m.row_index.push_back(ordinal_from_key(cells[0]));
    auto& row = m.cells.emplace_back();
    for (std::size_t y = 1; y < cells.size(); ++y) {
      if (cells[y] != "0" && cells[y] != "1") {
        throw Error(ErrorCode::kParseError, "matrix cell must be 0 or 1, got '" + cells[y] + "'");
      }
      row.push_back(cells[y] == "1");
    }
  }
  if (!increasing(m.row_index) || !increasing(m.col_index)) {
    throw Error(ErrorCode::kParseError, "matrix headers must be strictly increasing");
  }
  return m;
}

void validate_instance(const PccInstance& inst) {
  if (inst.ctx == nullptr) throw Error(ErrorCode::kInvalidArgument, "instance has no context");
  if (!increasing(inst.t1) || !increasing(inst.t2)) {
    throw Error(ErrorCode::kInvalidArgument, "T1 and T2 must be increasing");
  }
  if (inst.t1.size() != inst.fam1.size() || inst.t2.size() != inst.fam2.size()) {
    throw Error(ErrorCode::kInvalidArgument, "index lists and families differ in length");
  }
  const Ladder& ladder = inst.ctx->ladder();
  auto check = [&](const std::vector<Ordinal>& t, const std::vector<QCondition>& fam) {
    for (std::size_t x = 0; x < t.size(); ++x) {
      const Ordinal delta = t[x];
      validate_condition(*inst.ctx, fam[x]);
      for (const OrdinalSet* part : {&fam[x].w, &fam[x].s}) {
        const auto it = part->lower_bound(inst.gamma);
        if (it != part->end() && *it < delta) {
          throw Error(ErrorCode::kInvalidArgument, "dom(p) ∩ " + to_key(delta) + " holds " +
                                                       to_key(*it) + ", which is not below gamma");
        }
      }
      for (auto it = fam[x].s.lower_bound(inst.gamma); it != fam[x].s.end(); ++it) {
        if (!(delta < *it) || ladder.count_below(*it, delta) >= inst.k) {
          throw Error(ErrorCode::kInvalidArgument,
                      "k does not bound |c_" + to_key(*it) + " ∩ " + to_key(delta) + "|");
        }
      }
    }
  };
  check(inst.t1, inst.fam1);
  check(inst.t2, inst.fam2);
}

AbProfiles pcc_ab_profiles(const PccInstance& inst) {
  AbProfiles out;
  for (std::size_t x = 0; x < inst.t1.size(); ++x) {
    out.A.emplace(inst.t1[x], meet_above(*inst.ctx, inst.fam1[x].w, inst.gamma));
  }
  for (std::size_t y = 0; y < inst.t2.size(); ++y) {
    out.B.emplace(inst.t2[y], join_above(*inst.ctx, inst.fam2[y].w, inst.gamma));
  }
  return out;
}

std::optional<CompatiblePair> find_compatible_pair(const PccInstance& inst) {
  const AbProfiles profiles = pcc_ab_profiles(inst);
  for (std::size_t x = 0; x < inst.t1.size(); ++x) {
    const FinSet& A = profiles.A.at(inst.t1[x]);
    for (std::size_t y = 0; y < inst.t2.size(); ++y) {
      if (!(inst.t1[x] < inst.t2[y])) continue;
      const FinSet candidates = (A - profiles.B.at(inst.t2[y])).at_or_above(inst.k);
      if (candidates.empty()) continue;
      if (!lemma32_check(*inst.ctx, inst.fam1[x], inst.fam2[y], inst.gamma, inst.t2[y])) continue;
      auto witness = q_compatible(*inst.ctx, inst.fam1[x], inst.fam2[y]);
      if (!witness) {
        throw std::logic_error("lemma hypotheses hold at (" + to_key(inst.t1[x]) + ", " +
                               to_key(inst.t2[y]) + ") but the conditions are incompatible");
      }
      return CompatiblePair{inst.t1[x], inst.t2[y], *candidates.members().begin(), *witness};
    }
  }
  return std::nullopt;
}

bool verify_rectangle(const CompatMatrix& m, const Rectangle& r) {
  for (std::size_t x : r.rows) {
    for (std::size_t y : r.cols) {
      if (x >= m.rows() || y >= m.cols()) return false;
      if (m.row_index[x] < m.col_index[y] && !m.cells[x][y]) return false;
    }
  }
  return true;
}

namespace {

bool conflict(const CompatMatrix& m, std::size_t x, std::size_t y) {
  return m.row_index[x] < m.col_index[y] && !m.cells[x][y];
}

}  // namespace

Rectangle exact_order_rectangle(const CompatMatrix& m) {
  const bool by_rows = m.rows() <= m.cols();
  const std::size_t small = by_rows ? m.rows() : m.cols();
  const std::size_t large = by_rows ? m.cols() : m.rows();
  if (small > kExactRectangleLimit) {
    throw Error(ErrorCode::kInvalidArgument, "exact search is limited to 12 rows or columns");
  }
  auto clash = [&](std::size_t s, std::size_t l) {
    return by_rows ? conflict(m, s, l) : conflict(m, l, s);
  };

  Rectangle best;
  bool have = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << small); ++mask) {
    std::vector<std::size_t> chosen, others;
    for (std::size_t s = 0; s < small; ++s) {
      if ((mask >> s) & 1U) chosen.push_back(s);
    }
    for (std::size_t l = 0; l < large; ++l) {
      if (std::none_of(chosen.begin(), chosen.end(), [&](std::size_t s) { return clash(s, l); })) {
        others.push_back(l);
      }
    }
    Rectangle r = by_rows ? Rectangle{chosen, others} : Rectangle{others, chosen};
    if (!have || r.size() > best.size()) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

Rectangle greedy_order_rectangle(const CompatMatrix& m, std::size_t budget) {
  const std::size_t n_rows = m.rows();
  const std::size_t n = n_rows + m.cols();
  std::vector<bool> kept(n, true);
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t x = 0; x < n_rows; ++x) {
    for (std::size_t y = 0; y < m.cols(); ++y) {
      if (conflict(m, x, y)) {
        ++degree[x];
        ++degree[n_rows + y];
      }
    }
  }
  auto neighbours = [&](std::size_t v, auto&& fn) {
    if (v < n_rows) {
      for (std::size_t y = 0; y < m.cols(); ++y) {
        if (conflict(m, v, y)) fn(n_rows + y);
      }
    } else {
      for (std::size_t x = 0; x < n_rows; ++x) {
        if (conflict(m, x, v - n_rows)) fn(x);
      }
    }
  };

  std::vector<std::size_t> dropped;
  for (std::size_t step = 0; step < budget; ++step) {
    std::size_t worst = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (kept[v] && degree[v] > 0 && (worst == n || degree[v] > degree[worst])) worst = v;
    }
    if (worst == n) break;
    kept[worst] = false;
    dropped.push_back(worst);
    neighbours(worst, [&](std::size_t u) {
      if (kept[u]) --degree[u];
    });
  }
  // Out of budget: drop whatever still conflicts so the result is valid.
  for (std::size_t v = 0; v < n; ++v) {
    if (kept[v] && degree[v] > 0) {
      kept[v] = false;
      dropped.push_back(v);
      neighbours(v, [&](std::size_t u) {
        if (kept[u]) --degree[u];
      });
    }
  }
  for (auto it = dropped.rbegin(); it != dropped.rend(); ++it) {
    bool clean = true;
    neighbours(*it, [&](std::size_t u) { clean = clean && !kept[u]; });
    if (clean) kept[*it] = true;
  }

  Rectangle r;
  for (std::size_t v = 0; v < n; ++v) {
    if (!kept[v]) continue;
    if (v < n_rows) {
      r.rows.push_back(v);
    } else {
      r.cols.push_back(v - n_rows);
    }
  }
  return r;
}

Rectangle max_order_rectangle(const CompatMatrix& m, std::size_t budget) {
  Rectangle r = (m.rows() <= kExactRectangleLimit && m.cols() <= kExactRectangleLimit)
                    ? exact_order_rectangle(m)
                    : greedy_order_rectangle(m, budget);
  if (!verify_rectangle(m, r)) throw std::logic_error("rectangle search returned a conflicting pair");
  return r;
}

std::unique_ptr<GeneratedPcc> generate_pcc_instance(const PccGenParams& params, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = params.family_size;
  const std::size_t M = params.universe;
  const Ordinal gamma = Ordinal::limit(1);
  constexpr std::uint32_t kBlockWidth = 4;  // finite parts used inside each block

  auto random_set = [&](std::uint64_t num, std::uint64_t den) {
    FinSet s;
    for (std::size_t k = 0; k < M; ++k) {
      if (chance(rng, num, den)) s.insert(k);
    }
    return s;
  };

  GapFragment g;
  g.universe = M;
  SPartition part;
  std::map<Ordinal, std::vector<Ordinal>> tables;
  OrdinalSet core;
  for (std::uint32_t r = 0; r < params.core_size; ++r) core.insert(Ordinal::finite(r));

  auto add_index = [&](Ordinal i) {
    g.a.emplace(i, random_set(3, 5));
    g.b.emplace(i, random_set(2, 5));
  };
  for (const Ordinal& i : core) add_index(i);

  std::vector<Ordinal> t;
  for (std::uint32_t u = 1; u <= n; ++u) {
    const Ordinal delta = Ordinal::limit(2 * u);
    const Ordinal sigma = Ordinal::limit(2 * u + 1);
    t.push_back(delta);
    part.T.insert(delta);
    part.S.insert(sigma);
    part.D.insert(delta);
    part.D.insert(sigma);
    for (std::uint32_t r = 0; r < kBlockWidth; ++r) {
      add_index({2 * u, r});
      add_index({2 * u + 1, r});
    }
    // Up to a dozen rungs in lower blocks, then cofinal in the block below
    // sigma; the low rungs are what |c_sigma ∩ j| counts for earlier j.
    constexpr std::uint32_t kRungWidth = kBlockWidth + 2;
    const std::size_t room = static_cast<std::size_t>(2 * u) * kRungWidth;
    const std::size_t low = uniform_below(rng, std::min<std::size_t>(13, room));
    std::set<Ordinal> picks;
    while (picks.size() < low) {
      const auto q = static_cast<std::uint32_t>(uniform_below(rng, 2 * u));
      picks.insert({q, static_cast<std::uint32_t>(uniform_below(rng, kRungWidth))});
    }
    std::vector<Ordinal> rungs(picks.begin(), picks.end());
    for (std::uint32_t r = 0; r <= kRungWidth; ++r) rungs.push_back({2 * u, r});
    tables.emplace(sigma, std::move(rungs));
  }

  auto out = std::make_unique<GeneratedPcc>(
      GeneratedPcc{QContext(std::move(g), Ladder::explicit_tables(std::move(tables)), std::move(part)),
                   PccInstance{}});
  PccInstance& inst = out->instance;
  inst.ctx = &out->ctx;
  inst.gamma = gamma;
  inst.t1 = t;
  inst.t2 = t;

  auto make_condition = [&](Ordinal delta) {
    QCondition p;
    p.w = core;
    // One or two indices from delta's block, and sometimes a sigma-block
    // index together with sigma itself in s.
    const std::uint32_t u2 = delta.q;
    const std::size_t in_block = 1 + uniform_below(rng, 2);
    while (p.w.size() < core.size() + in_block) {
      p.w.insert({u2, static_cast<std::uint32_t>(uniform_below(rng, kBlockWidth))});
    }
    if (chance(rng, 2, 3)) {
      p.w.insert({u2 + 1, static_cast<std::uint32_t>(uniform_below(rng, kBlockWidth))});
      p.s.insert(Ordinal::limit(u2 + 1));
    }
    return p;
  };
  for (const Ordinal& delta : t) inst.fam1.push_back(make_condition(delta));
  for (const Ordinal& delta : t) inst.fam2.push_back(make_condition(delta));

  std::size_t k = 0;
  for (const auto* fam : {&inst.fam1, &inst.fam2}) {
    for (std::size_t x = 0; x < t.size(); ++x) {
      for (auto it = (*fam)[x].s.lower_bound(gamma); it != (*fam)[x].s.end(); ++it) {
        k = std::max(k, out->ctx.ladder().count_below(*it, t[x]) + 1);
      }
    }
  }
  inst.k = k;
  validate_instance(inst);
  return out;
}

}  // namespace gapforge
