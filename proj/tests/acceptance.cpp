// Acceptance suite: one PASS/FAIL line per criterion.  Exit status is
// nonzero when any criterion fails.

#include <cstring>
#include <iostream>

#include <matsemi/verify.hpp>

using namespace matsemi;

namespace {

  Json report_json(VerifyReport const& rep) {
    Json j = Json::array();
    for (auto const& r : rep.criteria) {
      j.push_back(to_json(r));
    }
    return j;
  }

}  // namespace

int main(int argc, char** argv) {
  VerifyOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full") == 0) {
      opt.profile = Profile::full;
    }
  }
  opt.threads              = 1;
  VerifyReport const one   = verify_all(opt);
  opt.threads              = 8;
  VerifyReport const eight = verify_all(opt);
  std::string const  a     = report_json(one).dump();
  std::string const  b     = report_json(eight).dump();

  bool all_ok = true;
  for (auto r : one.criteria) {
    if (r.id == 13 && r.passed && a != b) {
      r.passed  = false;
      r.witness = "verify reports at 1 and 8 threads differ";
    }
    all_ok = all_ok && r.passed;
    std::cout << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.name;
    if (!r.passed) {
      std::cout << "  [" << r.witness << "]";
    }
    std::cout << "\n";
  }
  std::cout << (all_ok ? "all criteria passed" : "some criteria failed") << "\n";
  return all_ok ? 0 : 1;
}
