#include <doctest.h>

#include <string>

#include "cknsym/special_functions.hpp"
#include "cknsym/verification.hpp"

using namespace cknsym;

TEST_CASE("criteria that do not involve the d = 5 bound-gap sweep pass") {
  VerifyOptions opts;
  opts.quick = true;
  for (const auto& check : {check_fs_ordering(opts), check_n_consistency(opts), check_limits(opts),
                            check_root_certificates(opts), check_digamma(opts), check_wlh_chain(opts),
                            check_determinism(opts), check_oracle_equivalence(opts)}) {
    CAPTURE(format_check(check));
    CHECK(check.passed);
  }
}

TEST_CASE("module invariants pass") {
  VerifyOptions opts;
  for (const auto& check : run_invariants(opts)) {
    CAPTURE(format_check(check));
    CHECK(check.passed);
  }
}

TEST_CASE("a digamma off by 1e-6 relative is caught") {
  VerifyOptions opts;
  opts.digamma = [](double z) { return digamma(z) * (1.0 + 1e-6); };
  const CheckResult r = check_digamma(opts);
  CHECK_FALSE(r.passed);
  CHECK(r.measured.find("failure") != std::string::npos);
}

TEST_CASE("a loose root tolerance is reflected in the certificate") {
  VerifyOptions opts;
  opts.tol_root = 1e-6;
  CHECK(check_root_certificates(opts).passed);
}

TEST_CASE("acceptance runs every criterion in order") {
  VerifyOptions opts;
  opts.quick = true;
  const auto all = run_acceptance(opts);
  REQUIRE(all.size() == 9);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].id == "C" + std::to_string(i + 1));
  CHECK(format_check(all[1]).rfind(all[1].passed ? "PASS" : "FAIL", 0) == 0);
}
