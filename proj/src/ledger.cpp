#include "esk/ledger.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "esk/errors.hpp"

namespace esk {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(int line, const std::string& what) {
  throw Error(Errc::parse_error, "ledger line " + std::to_string(line) + ": " + what);
}

// "k+3", "2k-2", "k", "-5", "k-1" -> a*k + b
LinTerm parse_lin(const std::string& raw, int line) {
  std::string s = strip(raw);
  if (s.empty()) bad(line, "empty term");
  std::size_t i = 0;
  long sign = 1;
  if (s[i] == '+' || s[i] == '-') {
    sign = s[i] == '-' ? -1 : 1;
    ++i;
  }
  long first = 1;
  bool have_digits = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    if (!have_digits) first = 0;
    have_digits = true;
    first = first * 10 + (s[i] - '0');
    ++i;
  }
  LinTerm t;
  if (i < s.size() && s[i] == 'k') {
    ++i;
    t.a = sign * first;
    if (i == s.size()) return t;
    long bsign = 1;
    if (s[i] == '+' || s[i] == '-') {
      bsign = s[i] == '-' ? -1 : 1;
      ++i;
    } else {
      bad(line, "expected +/- after k in '" + s + "'");
    }
    if (i == s.size()) bad(line, "dangling sign in '" + s + "'");
    long b = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      b = b * 10 + (s[i] - '0');
      ++i;
    }
    if (i != s.size()) bad(line, "trailing characters in '" + s + "'");
    t.b = bsign * b;
    return t;
  }
  if (!have_digits || i != s.size()) bad(line, "cannot parse term '" + s + "'");
  t.b = sign * first;
  return t;
}

long parse_int(const std::string& raw, int line) {
  std::string s = strip(raw);
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) bad(line, "bad integer '" + s + "'");
    return v;
  } catch (const std::exception&) {
    bad(line, "bad integer '" + s + "'");
  }
}

// nonnegativity of A k^2 + B k + C over integer k >= k0
bool poly_nonneg_from(long A, long B, long C, long k0) {
  auto val = [&](long k) { return A * k * k + B * k + C; };
  if (A < 0) return false;
  if (A == 0) {
    if (B < 0) return false;
    return val(k0) >= 0;
  }
  // integer minimum near the vertex -B/(2A), clamped to >= k0
  long lo = k0;
  if (-B > 2 * A * k0) {
    long v = -B / (2 * A);
    for (long k = std::max(k0, v - 1); k <= v + 1; ++k)
      if (val(k) < 0) return false;
  }
  return val(lo) >= 0;
}

bool poly_positive_from(long A, long B, long C, long k0) {
  return poly_nonneg_from(A, B, C - 1, k0);
}

}  // namespace

std::vector<LedgerEntry> parse_ledger(std::istream& in) {
  std::vector<LedgerEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    std::size_t hash = body.find('#');
    if (hash != std::string::npos) body = body.substr(0, hash);
    body = strip(body);
    if (body.empty()) continue;
    std::vector<std::string> cols;
    std::istringstream is(body);
    std::string col;
    while (std::getline(is, col, '|')) cols.push_back(col);
    if (cols.size() != 6) bad(lineno, "expected 6 columns, got " + std::to_string(cols.size()));
    LedgerEntry e;
    e.line = lineno;
    e.case_id = strip(cols[0]);
    if (e.case_id.empty()) bad(lineno, "empty case id");
    std::istringstream terms(cols[1]);
    std::string term;
    while (std::getline(terms, term, ',')) e.removed.push_back(parse_lin(term, lineno));
    if (e.removed.empty()) bad(lineno, "no removed terms");
    e.added_back = parse_int(cols[2], lineno);
    e.order_after = parse_lin(cols[3], lineno);
    std::istringstream quad(cols[4]);
    std::vector<long> q;
    while (std::getline(quad, term, ',')) q.push_back(parse_int(term, lineno));
    if (q.size() != 3) bad(lineno, "doubled bound needs 3 coefficients");
    e.quad_a = q[0];
    e.quad_b = q[1];
    e.quad_c = q[2];
    e.target = parse_lin(cols[5], lineno);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LedgerEntry> parse_ledger_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open ledger corpus: " + path);
  return parse_ledger(in);
}

LedgerReport verify_ledger(const std::vector<LedgerEntry>& entries, int k_min, int k_max) {
  LedgerReport report;
  report.k_min = k_min;
  report.k_max = k_max;
  for (const LedgerEntry& e : entries) {
    EntryCheck c;
    c.case_id = e.case_id;
    long suma = 0, sumb = 0;
    for (const LinTerm& t : e.removed) {
      suma += t.a;
      sumb += t.b;
    }
    // (i) margin polynomial: (k^2+2k-8) - 2*removed + 2*added - bound
    long pa = 1 - e.quad_a;
    long pb = 2 - 2 * suma - e.quad_b;
    long pc = -8 - 2 * sumb + 2 * e.added_back - e.quad_c;
    bool sym_i = poly_nonneg_from(pa, pb, pc, k_min);
    // (ii) margin polynomial: bound - order_after * target
    long qa = e.quad_a - e.order_after.a * e.target.a;
    long qb = e.quad_b - e.order_after.a * e.target.b - e.order_after.b * e.target.a;
    long qc = e.quad_c - e.order_after.b * e.target.b;
    bool sym_ii = poly_nonneg_from(qa, qb, qc, k_min);
    c.target_strict = poly_positive_from(qa, qb, qc, k_min);
    c.slack_at_kmin = qa * k_min * k_min + qb * k_min + qc;
    bool perk_i = true, perk_ii = true;
    long bad_k = 0;
    for (long k = k_min; k <= k_max; ++k) {
      long baseline = 1 + (k - 2) * (k + 4) / 2;
      long lhs2 = 2 * (baseline - (suma * k + sumb) + e.added_back);
      long bound = e.quad_a * k * k + e.quad_b * k + e.quad_c;
      if (lhs2 <= bound && perk_i) {
        perk_i = false;
        bad_k = k;
      }
      long np = e.order_after.at(k);
      if (np <= 0 || bound < np * e.target.at(k)) {
        if (perk_ii) {
          perk_ii = false;
          if (!bad_k) bad_k = k;
        }
      }
    }
    c.edge_bound_ok = sym_i && perk_i;
    c.target_ok = sym_ii && perk_ii;
    if (!c.edge_bound_ok)
      c.detail = perk_i ? "edge bound fails symbolically"
                        : "edge bound fails at k=" + std::to_string(bad_k);
    else if (!c.target_ok)
      c.detail = perk_ii ? "target fails symbolically"
                         : "target fails at k=" + std::to_string(bad_k);
    report.entries.push_back(std::move(c));
  }
  report.failures = 0;
  for (const EntryCheck& c : report.entries)
    if (!c.edge_bound_ok || !c.target_ok) ++report.failures;
  report.all_ok = report.failures == 0;
  return report;
}

CrossCheck cross_check_ledger(const std::vector<LedgerEntry>& entries,
                              const std::vector<std::string>& inequality_labels) {
  auto base_id = [](const std::string& id) {
    for (const char* suf : {"-i", "-ii"})
      if (id.size() > std::strlen(suf) && id.ends_with(suf))
        return id.substr(0, id.size() - std::strlen(suf));
    return id;
  };
  CrossCheck cc;
  std::vector<std::string> have;
  for (const LedgerEntry& e : entries) {
    std::string b = base_id(e.case_id);
    have.push_back(b);
    bool known = false;
    for (const std::string& l : inequality_labels)
      if (l == b) known = true;
    if (!known) cc.unknown_cases.push_back(e.case_id);
  }
  for (const std::string& l : inequality_labels) {
    bool found = false;
    for (const std::string& h : have)
      if (h == l) found = true;
    if (!found) cc.missing_cases.push_back(l);
  }
  return cc;
}

std::string ledger_report_json(const LedgerReport& report, const CrossCheck* cc) {
  nlohmann::json j;
  j["k_min"] = report.k_min;
  j["k_max"] = report.k_max;
  j["all_ok"] = report.all_ok;
  j["failures"] = report.failures;
  j["entries"] = nlohmann::json::array();
  for (const EntryCheck& c : report.entries) {
    nlohmann::json e;
    e["case"] = c.case_id;
    e["edge_bound_ok"] = c.edge_bound_ok;
    e["target_ok"] = c.target_ok;
    e["target_strict"] = c.target_strict;
    e["slack_at_kmin"] = c.slack_at_kmin;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["entries"].push_back(std::move(e));
  }
  if (cc) {
    j["cross_check"]["ok"] = cc->ok();
    j["cross_check"]["unknown_cases"] = cc->unknown_cases;
    j["cross_check"]["missing_cases"] = cc->missing_cases;
  }
  return j.dump(2);
}

}  // namespace esk
