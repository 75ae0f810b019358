#include "report.hpp"

#include <cstdio>

namespace xprod::cli {

void Report::value(const std::string& key, json v, std::string text) {
  if (text.empty()) text = v.is_string() ? v.get<std::string>() : v.dump();
  values_[key] = std::move(v);
  texts_.emplace_back(key, std::move(text));
}

bool Report::pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

void Report::print_text(std::ostream& out) const {
  out << "$ " << command_ << "\n";
  if (!field_.empty()) out << "field: " << field_ << "\n";
  for (const auto& [k, t] : texts_) out << k << (!t.empty() && t[0] == '\n' ? ":" : ": ") << t << "\n";
  std::size_t passed = 0;
  for (const auto& c : checks_) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
    for (const auto& w : c.witnesses) out << "    witness " << w << "\n";
    passed += c.pass ? 1 : 0;
  }
  if (timing_ms_ >= 0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", timing_ms_);
    out << "elapsed_ms: " << buf << "\n";
  }
  out << "result: " << (pass() ? "PASS" : "FAIL") << " (" << passed << "/" << checks_.size() << " checks)\n";
}

void Report::print_json(std::ostream& out) const {
  json j;
  j["command"] = command_;
  if (!field_.empty()) j["field"] = field_;
  j["values"] = values_;
  json cs = json::array();
  for (const auto& c : checks_) {
    json x;
    x["name"] = c.name;
    x["pass"] = c.pass;
    if (!c.detail.empty()) x["detail"] = c.detail;
    if (!c.witnesses.empty()) x["witnesses"] = c.witnesses;
    cs.push_back(x);
  }
  j["checks"] = cs;
  if (timing_ms_ >= 0) j["elapsed_ms"] = timing_ms_;
  j["result"] = pass() ? "pass" : "fail";
  out << j.dump(2) << "\n";
}

}  // namespace xprod::cli
