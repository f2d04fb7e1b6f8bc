#include <gtest/gtest.h>

#include "support.hpp"

namespace gapforge {
namespace {

CompatMatrix matrix(std::size_t rows, std::size_t cols, bool fill) {
  CompatMatrix m;
  for (std::uint32_t x = 0; x < rows; ++x) m.row_index.push_back({0, x});
  for (std::uint32_t y = 0; y < cols; ++y) m.col_index.push_back({1, y});
  m.cells.assign(rows, std::vector<bool>(cols, fill));
  return m;
}

CompatMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  CompatMatrix m;
  // Interleaved headers so the order constraint matters.
  for (std::uint32_t x = 0; x < rows; ++x) m.row_index.push_back({0, 2 * x});
  for (std::uint32_t y = 0; y < cols; ++y) m.col_index.push_back({0, 2 * y + 1});
  m.cells.assign(rows, std::vector<bool>(cols, false));
  const std::uint64_t density = 1 + uniform_below(rng, 9);
  for (auto& row : m.cells) {
    for (std::size_t y = 0; y < cols; ++y) row[y] = chance(rng, density, 10);
  }
  return m;
}

// Largest verified rectangle by enumerating every row subset and column subset.
std::size_t ref_best_rectangle(const CompatMatrix& m) {
  std::size_t best = 0;
  for (std::uint64_t rm = 0; rm < (std::uint64_t{1} << m.rows()); ++rm) {
    for (std::uint64_t cm = 0; cm < (std::uint64_t{1} << m.cols()); ++cm) {
      Rectangle r;
      for (std::size_t x = 0; x < m.rows(); ++x) {
        if ((rm >> x) & 1U) r.rows.push_back(x);
      }
      for (std::size_t y = 0; y < m.cols(); ++y) {
        if ((cm >> y) & 1U) r.cols.push_back(y);
      }
      if (verify_rectangle(m, r)) best = std::max(best, r.size());
    }
  }
  return best;
}

TEST(Rectangle, AllTrueAndAllFalse) {
  const CompatMatrix t = matrix(5, 4, true);
  EXPECT_EQ(max_order_rectangle(t).size(), 9u);
  EXPECT_EQ(greedy_order_rectangle(t, 100).size(), 9u);
  const CompatMatrix f = matrix(5, 4, false);
  const Rectangle r = max_order_rectangle(f);
  EXPECT_EQ(r.size(), 5u);
  EXPECT_TRUE(r.rows.empty() || r.cols.empty());
  EXPECT_TRUE(verify_rectangle(f, greedy_order_rectangle(f, 100)));
}

TEST(Rectangle, ExactMatchesFullEnumeration) {
  Rng rng(61);
  for (int t = 0; t < 150; ++t) {
    const CompatMatrix m = random_matrix(rng, 1 + uniform_below(rng, 7), 1 + uniform_below(rng, 7));
    const Rectangle exact = exact_order_rectangle(m);
    EXPECT_TRUE(verify_rectangle(m, exact));
    EXPECT_EQ(exact.size(), ref_best_rectangle(m));
    const Rectangle greedy = greedy_order_rectangle(m, 1000);
    EXPECT_TRUE(verify_rectangle(m, greedy));
    EXPECT_LE(greedy.size(), exact.size());
  }
}

TEST(Rectangle, GreedyBeyondExactLimit) {
  Rng rng(62);
  const CompatMatrix m = random_matrix(rng, 30, 30);
  EXPECT_THROW(exact_order_rectangle(m), Error);
  EXPECT_TRUE(verify_rectangle(m, max_order_rectangle(m)));
  EXPECT_TRUE(verify_rectangle(m, greedy_order_rectangle(m, 3)));
}

TEST(Rectangle, VerifyRejectsOutOfRange) {
  const CompatMatrix m = matrix(2, 2, true);
  EXPECT_FALSE(verify_rectangle(m, {{5}, {0}}));
}

TEST(CompatMatrix, CsvRoundTrip) {
  Rng rng(63);
  const CompatMatrix m = random_matrix(rng, 4, 3);
  const std::string csv = compat_matrix_csv(m);
  EXPECT_EQ(csv.substr(0, 8), "row\\col,");
  const CompatMatrix back = parse_compat_matrix_csv(csv);
  EXPECT_EQ(back.row_index, m.row_index);
  EXPECT_EQ(back.col_index, m.col_index);
  EXPECT_EQ(back.cells, m.cells);
  EXPECT_THROW(parse_compat_matrix_csv("row\\col,0.1\n0.0,2\n"), Error);
  EXPECT_THROW(parse_compat_matrix_csv("row\\col,0.1\n0.0,1,1\n"), Error);
  EXPECT_THROW(parse_compat_matrix_csv("row\\col,0.1\n0.3,1\n0.2,1\n"), Error);
  EXPECT_THROW(parse_compat_matrix_csv(""), Error);
}

QContext tiny_context() {
  GapFragment g;
  g.universe = 4;
  for (const Ordinal& i : {Ordinal{0, 0}, Ordinal{2, 1}, Ordinal{4, 1}}) {
    g.a[i] = {0, 1};
    g.b[i] = {};
  }
  return QContext(g, Ladder::canonical(), {{{3, 0}}, {{2, 0}, {4, 0}}, {}});
}

TEST(CompatMatrix, SmallFamilies) {
  const QContext ctx = tiny_context();
  EXPECT_EQ(build_compat_matrix(ctx, {}, {}, {}, {}).rows(), 0u);
  const QCondition p{{{0, 0}}, {}};
  const CompatMatrix one = build_compat_matrix(ctx, {{2, 0}}, {p}, {{2, 0}}, {p});
  ASSERT_EQ(one.cells.size(), 1u);
  EXPECT_TRUE(one.cells[0][0]);
  EXPECT_THROW(build_compat_matrix(ctx, {{2, 0}}, {}, {}, {}), Error);
}

PccInstance tiny_instance(const QContext& ctx) {
  PccInstance inst;
  inst.ctx = &ctx;
  inst.gamma = {1, 0};
  inst.t1 = inst.t2 = {{2, 0}, {4, 0}};
  inst.fam1 = {{{{0, 0}, {2, 1}}, {}}, {{{0, 0}, {4, 1}}, {}}};
  inst.fam2 = inst.fam1;
  return inst;
}

TEST(Profiles, Examples) {
  const QContext ctx = tiny_context();
  PccInstance inst = tiny_instance(ctx);
  EXPECT_NO_THROW(validate_instance(inst));
  const AbProfiles ab = pcc_ab_profiles(inst);
  EXPECT_EQ(ab.A.at({2, 0}), (FinSet{0, 1}));
  EXPECT_EQ(ab.B.at({4, 0}), FinSet{});

  PccInstance degenerate = inst;
  degenerate.fam1 = degenerate.fam2 = {{{{0, 0}}, {}}, {{{0, 0}}, {}}};
  const AbProfiles d = pcc_ab_profiles(degenerate);
  EXPECT_EQ(d.A.at({2, 0}), FinSet::range(4));
  EXPECT_EQ(d.B.at({2, 0}), FinSet{});
}

TEST(FindPair, Examples) {
  const QContext ctx = tiny_context();
  const PccInstance inst = tiny_instance(ctx);
  const auto pair = find_compatible_pair(inst);
  ASSERT_TRUE(pair.has_value());
  EXPECT_EQ(pair->delta1, Ordinal(2, 0));
  EXPECT_EQ(pair->delta2, Ordinal(4, 0));
  EXPECT_EQ(pair->n, 0u);

  PccInstance degenerate = inst;
  degenerate.fam1 = degenerate.fam2 = {{{{0, 0}}, {}}, {{{0, 0}}, {}}};
  const auto first = find_compatible_pair(degenerate);
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(first->delta1, Ordinal(2, 0));
  EXPECT_EQ(first->n, 0u);

  // B covers the universe: no witness n.
  GapFragment full = ctx.gap();
  for (auto& [j, b] : full.b) b = FinSet::range(4);
  const QContext full_ctx(full, ctx.ladder(), ctx.partition());
  PccInstance blocked = inst;
  blocked.ctx = &full_ctx;
  EXPECT_FALSE(find_compatible_pair(blocked).has_value());
}

TEST(Instance, ValidationCatchesBrokenInvariants) {
  const QContext ctx = tiny_context();
  PccInstance inst = tiny_instance(ctx);
  inst.fam1[1].w.insert({3, 1});
  EXPECT_THROW(validate_instance(inst), Error);  // not an index of the context
  inst = tiny_instance(ctx);
  inst.fam1[1].w.insert({2, 1});                 // inside [gamma, delta)
  EXPECT_THROW(validate_instance(inst), Error);
  inst = tiny_instance(ctx);
  inst.t1 = {{4, 0}, {2, 0}};
  EXPECT_THROW(validate_instance(inst), Error);
  inst = tiny_instance(ctx);
  inst.fam1[0].s.insert({3, 0});
  inst.k = 0;  // |c_{omega*3} ∩ omega*2| = 0 is not below 0
  EXPECT_THROW(validate_instance(inst), Error);
  inst.k = 1;
  EXPECT_NO_THROW(validate_instance(inst));
}

TEST(Generator, InstancesAreValidAndSeeded) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto gen = generate_pcc_instance({}, seed);
    const PccInstance& inst = gen->instance;
    EXPECT_EQ(inst.t1.size(), 30u);
    EXPECT_NO_THROW(validate_instance(inst));
    EXPECT_GT(inst.k, 0u);
    const auto again = generate_pcc_instance({}, seed);
    EXPECT_EQ(again->instance.fam1, inst.fam1);
    EXPECT_EQ(again->ctx.gap(), gen->ctx.gap());
  }
}

TEST(Generator, ProfileInterpolationFollowsFromTheGap) {
  // A_delta ⊆ a_i and b_j ⊆ B_delta for the indices above gamma, so a
  // uniform interpolation of g on those indices also interpolates the
  // profile diagram. Checked in both diagrams with uniform_interpolation.
  std::size_t both = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto gen = generate_pcc_instance({8, 6, 2}, seed);
    const PccInstance& inst = gen->instance;
    const AbProfiles ab = pcc_ab_profiles(inst);
    GapFragment profile;
    profile.universe = gen->ctx.gap().universe;
    profile.a = ab.A;
    profile.b = ab.B;
    OrdinalSet rows, cols;
    for (const auto& p : inst.fam1) rows.insert(p.w.lower_bound(inst.gamma), p.w.end());
    for (const auto& p : inst.fam2) cols.insert(p.w.lower_bound(inst.gamma), p.w.end());
    const GapFragment under = gen->ctx.gap().restricted(rows, cols);
    for (std::size_t n0 = 0; n0 <= profile.universe; ++n0) {
      const bool g_ok = uniform_interpolation(under, n0).has_value();
      const bool profile_ok = uniform_interpolation(profile, n0).has_value();
      if (g_ok) {
        EXPECT_TRUE(profile_ok) << "seed " << seed << " n0 " << n0;
        ++both;
      }
    }
  }
  EXPECT_GT(both, 0u);
}

}  // namespace
}  // namespace gapforge
