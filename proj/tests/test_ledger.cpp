#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "esk/constructive.hpp"
#include "esk/errors.hpp"
#include "esk/ledger.hpp"

using namespace esk;

namespace {

std::vector<LedgerEntry> parse_str(const std::string& s) {
  std::istringstream in(s);
  return parse_ledger(in);
}

const EntryCheck& find_check(const LedgerReport& r, const std::string& id) {
  for (const EntryCheck& c : r.entries)
    if (c.case_id == id) return c;
  REQUIRE(false);
  static EntryCheck dummy;
  return dummy;
}

}  // namespace

TEST_CASE("ledger parsing") {
  auto es = parse_str("x | k+3,k-5 | 1 | k+2 | 1,-2,-2 | k-4\n# comment\n\n");
  REQUIRE(es.size() == 1);
  CHECK(es[0].case_id == "x");
  REQUIRE(es[0].removed.size() == 2);
  CHECK(es[0].removed[0].a == 1);
  CHECK(es[0].removed[0].b == 3);
  CHECK(es[0].removed[1].b == -5);
  CHECK(es[0].added_back == 1);
  CHECK(es[0].order_after.at(10) == 12);
  CHECK(es[0].quad_b == -2);
  CHECK(es[0].target.at(10) == 6);

  CHECK_THROWS_AS(parse_str("x | k | 1 | k | 1,2 | k"), Error);        // 2 coeffs
  CHECK_THROWS_AS(parse_str("x | k | 1 | k | 1,2,3"), Error);          // 5 columns
  CHECK_THROWS_AS(parse_str("x | q+1 | 1 | k | 1,2,3 | k"), Error);    // bad term
  CHECK_THROWS_AS(parse_str("x | k | zz | k | 1,2,3 | k"), Error);     // bad int
  CHECK_THROWS_AS(parse_str(" | k | 1 | k | 1,2,3 | k"), Error);       // empty id
}

TEST_CASE("verification flags broken chains") {
  // claims a stronger bound than the deletions support: fails check (i)
  auto bad_bound = parse_str("b | k+3,k+3 | 0 | k+2 | 1,0,0 | k-4");
  LedgerReport r1 = verify_ledger(bad_bound, 9, 100);
  CHECK(!r1.all_ok);
  CHECK(!r1.entries[0].edge_bound_ok);
  CHECK(r1.entries[0].detail.find("edge bound") != std::string::npos);

  // sound bound but an overambitious average-degree target: fails check (ii)
  auto bad_target = parse_str("t | k+3,k-5 | 1 | k+2 | 1,-2,-2 | k-3");
  LedgerReport r2 = verify_ledger(bad_target, 9, 100);
  CHECK(!r2.all_ok);
  CHECK(r2.entries[0].edge_bound_ok);
  CHECK(!r2.entries[0].target_ok);
}

TEST_CASE("checked-in corpus holds for k in [9, 2000]") {
  auto entries = parse_ledger_file(std::string(ESKIT_DATA_DIR) + "/ledger_corpus.txt");
  CHECK(entries.size() == 49);
  LedgerReport r = verify_ledger(entries, 9, 2000);
  for (const EntryCheck& c : r.entries) {
    INFO(c.case_id << " " << c.detail);
    CHECK(c.edge_bound_ok);
    CHECK(c.target_ok);
  }
  CHECK(r.all_ok);
  CHECK(r.failures == 0);

  // the one chain with margin k-8 clears the target strictly from k=9 on
  const EntryCheck& tight = find_check(r, "2.3.2(C)");
  CHECK(tight.slack_at_kmin == 1);
  CHECK(tight.target_strict);
  // equality chains meet the target exactly
  const EntryCheck& eq = find_check(r, "2.2.1");
  CHECK(eq.slack_at_kmin == 0);
  CHECK(!eq.target_strict);
}

TEST_CASE("corpus ids match the registered inequality labels") {
  auto entries = parse_ledger_file(std::string(ESKIT_DATA_DIR) + "/ledger_corpus.txt");
  CrossCheck cc = cross_check_ledger(entries, inequality_labels());
  INFO("unknown: " << (cc.unknown_cases.empty() ? "" : cc.unknown_cases[0]));
  INFO("missing: " << (cc.missing_cases.empty() ? "" : cc.missing_cases[0]));
  CHECK(cc.unknown_cases.empty());
  CHECK(cc.missing_cases.empty());
  CHECK(cc.ok());
}

TEST_CASE("json report") {
  auto entries = parse_str("x | k+3,k-5 | 1 | k+2 | 1,-2,-2 | k-4");
  LedgerReport r = verify_ledger(entries, 9, 50);
  CrossCheck cc;
  std::string j = ledger_report_json(r, &cc);
  CHECK(j.find("\"all_ok\": true") != std::string::npos);
  CHECK(j.find("\"case\": \"x\"") != std::string::npos);
  CHECK(j.find("cross_check") != std::string::npos);
}
