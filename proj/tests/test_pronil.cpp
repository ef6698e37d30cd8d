#include <gtest/gtest.h>

#include "dglie/pronil.hpp"
#include "lie_samples.hpp"

using namespace dglie;

namespace {

FiniteLieData heisenberg() {
  FiniteLieData h({"a", "b", "c"}, {0, 0, 0}, 0, true);
  h.set_bracket(0, 1, unit_vector(2));
  return h;
}

FiniteLieData affine_line() {
  FiniteLieData t({"x", "y"}, {0, 0}, 0, true);
  t.set_bracket(1, 0, unit_vector(0));  // [y,x] = x
  return t;
}

FiniteLieData scaling_action() {
  FiniteLieData t({"y", "z"}, {0, 1}, 1, true);
  t.set_bracket(0, 1, unit_vector(1));  // [y,z] = z
  return t;
}

}  // namespace

TEST(Pronil, NilpotencyClasses) {
  FiniteLieData zero({}, {}, 0, true);
  auto v0 = nilpotency_of_degree_zero(zero);
  EXPECT_EQ(v0.outcome, Outcome::Holds);
  EXPECT_EQ(v0.nilpotency_class, 0u);
  FiniteLieData ab({"p", "q"}, {0, 0}, 0, true);
  auto v1 = nilpotency_of_degree_zero(ab);
  EXPECT_EQ(v1.outcome, Outcome::Holds);
  EXPECT_EQ(v1.nilpotency_class, 1u);
  auto v2 = nilpotency_of_degree_zero(heisenberg());
  EXPECT_EQ(v2.outcome, Outcome::Holds);
  EXPECT_EQ(v2.nilpotency_class, 2u);
  EXPECT_EQ(v2.dims, (std::vector<std::size_t>{3, 1, 0}));
}

TEST(Pronil, AffineLineFailsWithWitness) {
  FiniteLieData t = affine_line();
  auto v = nilpotency_of_degree_zero(t);
  ASSERT_EQ(v.outcome, Outcome::Fails);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(t.bracket(v.witness->left, v.witness->right), v.witness->value);
  EXPECT_FALSE(v.witness->value.empty());
  // the series stagnates at span{x}
  EXPECT_EQ(v.dims, (std::vector<std::size_t>{2, 1, 1}));
  EXPECT_EQ(lemma1_audit(t).combined, Outcome::Fails);
  EXPECT_EQ(definitional_pronilpotency(t).outcome, Outcome::Fails);
}

TEST(Pronil, GSeries) {
  FiniteLieData s = scaling_action();
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(g_series(s, 1, n).size(), 1u);
  auto v = g_series_vanishing(s, 1);
  EXPECT_EQ(v.outcome, Outcome::Fails);
  auto audit = lemma1_audit(s);
  EXPECT_EQ(audit.a.outcome, Outcome::Holds);
  EXPECT_EQ(audit.combined, Outcome::Fails);
  EXPECT_EQ(audit.summary, "fails (b)");
  FiniteLieData trivial({"y", "z"}, {0, 1}, 1, true);
  auto t = g_series_vanishing(trivial, 1);
  EXPECT_EQ(t.outcome, Outcome::Holds);
  EXPECT_EQ(t.vanishing_index, 2u);
  FiniteLieData empty_p({"y"}, {0}, 1, true);
  EXPECT_EQ(g_series_vanishing(empty_p, 1).vanishing_index, 1u);
  EXPECT_TRUE(g_series(heisenberg(), 0, 3).empty());
}

TEST(Pronil, AuditAgreesOnHandExamples) {
  auto h = lemma1_audit(heisenberg());
  EXPECT_EQ(h.combined, Outcome::Holds);
  EXPECT_EQ(definitional_pronilpotency(heisenberg()).outcome, Outcome::Holds);
  FiniteLieData zero({}, {}, 0, true);
  EXPECT_EQ(lemma1_audit(zero).combined, Outcome::Holds);
}

TEST(Pronil, IncompleteDegreesAreUndetermined) {
  FiniteLieData h = heisenberg();
  h.set_complete(0, false);
  EXPECT_EQ(nilpotency_of_degree_zero(h).outcome, Outcome::Undetermined);
  EXPECT_THROW(definitional_pronilpotency(h), UnsupportedError);
  FiniteLieData t = affine_line();
  t.set_complete(0, false);
  EXPECT_EQ(nilpotency_of_degree_zero(t).outcome, Outcome::Undetermined);
  t.set_quotient_certified(0, true);
  EXPECT_EQ(nilpotency_of_degree_zero(t).outcome, Outcome::Fails);
  FiniteLieData open({"a"}, {0}, 0, false);
  EXPECT_THROW(definitional_pronilpotency(open), UnsupportedError);
}

TEST(Pronil, RejectsInconsistentTables) {
  FiniteLieData bad({"a", "b", "c"}, {0, 0, 0}, 0, true);
  bad.set_bracket(0, 1, unit_vector(2));
  bad.set_bracket(0, 2, unit_vector(0));
  bad.set_bracket(1, 2, unit_vector(1));
  EXPECT_THROW(bad.validate(), ValidationError);
  EXPECT_THROW(nilpotency_of_degree_zero(bad), ValidationError);
}

TEST(Pronil, OracleEquivalenceOnRandomTables) {
  std::mt19937 rng(20240607);
  int holds = 0, fails = 0;
  for (int i = 0; i < 120; ++i) {
    auto s = samples::random_sample(rng);
    ASSERT_LE(s.table.dim(), 8u);
    s.table.validate();
    auto audit = lemma1_audit(s.table);
    auto oracle = definitional_pronilpotency(s.table);
    ASSERT_NE(audit.combined, Outcome::Undetermined);
    EXPECT_EQ(audit.combined, oracle.outcome) << "sample " << i;
    if (s.nilpotent_algebra) {
      EXPECT_EQ(oracle.outcome, Outcome::Holds);
    }
    (oracle.outcome == Outcome::Holds ? holds : fails)++;
    for (const auto& v : {audit.a, oracle}) {
      for (std::size_t j = 1; j < v.dims.size(); ++j) EXPECT_LE(v.dims[j], v.dims[j - 1]);
      if (v.outcome == Outcome::Fails) {
        ASSERT_TRUE(v.witness);
        EXPECT_EQ(s.table.bracket(v.witness->left, v.witness->right), v.witness->value);
        EXPECT_FALSE(v.witness->value.empty());
      }
    }
  }
  // both outcomes are exercised
  EXPECT_GT(holds, 10);
  EXPECT_GT(fails, 10);
}
