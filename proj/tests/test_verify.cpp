#include <matsemi/verify.hpp>

#include "support.hpp"

using namespace matsemi;

TEST(Verify, FaultInjectionIsCaught) {
  VerifyOptions opt;
  opt.inject_fault = true;
  auto const r     = run_criterion(1, opt);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.witness.find("n=2,q=2"), std::string::npos) << r.witness;
  auto const j = to_json(r);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["witness"], r.witness);
}

TEST(Verify, CriteriaPassIndividually) {
  VerifyOptions opt;
  for (int id : {2, 3, 10, 11, 12}) {
    auto const r = run_criterion(id, opt);
    EXPECT_TRUE(r.passed) << id << ": " << r.witness;
    EXPECT_EQ(r.id, id);
    EXPECT_FALSE(to_json(r).contains("witness"));
  }
  EXPECT_EQ(oracle::thrown_kind([&] { run_criterion(14, opt); }), "PreconditionViolated");
}

TEST(Verify, Case5IsReportedAsExpectedMismatch) {
  auto const r = run_criterion(10, VerifyOptions{});
  ASSERT_TRUE(r.passed) << r.witness;
  EXPECT_EQ(r.details["in_proof_formula_status"], "expected-mismatch");
}

TEST(Verify, LocalChecksForChosenSize) {
  VerifyOptions opt;
  auto const    local = local_checks(Field::make(2), 2, opt);
  EXPECT_EQ(local.size(), 3u);
  for (auto const& r : local) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.witness;
  }
  // M(3, 3) is beyond every cap: nothing to run
  EXPECT_TRUE(local_checks(Field::make(3), 3, opt).empty());
}
