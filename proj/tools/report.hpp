#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "xprod/serialize.hpp"

namespace xprod::cli {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
  std::vector<std::string> witnesses;
};

/*
 * Collects everything a command prints. Values keep insertion order so the
 * text and JSON renderings are stable across runs.
 */
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void set_field(const std::string& f) { field_ = f; }
  /// `text` overrides the human rendering of `value`.
  void value(const std::string& key, json value, std::string text = {});
  void check(Check c) { checks_.push_back(std::move(c)); }
  void check(const std::string& name, bool pass, std::string detail = {}) { checks_.push_back({name, pass, std::move(detail), {}}); }
  void timing(double ms) { timing_ms_ = ms; }

  bool pass() const;
  void print_text(std::ostream& out) const;
  void print_json(std::ostream& out) const;

 private:
  std::string command_;
  std::string field_;
  json values_ = json::object();
  std::vector<std::pair<std::string, std::string>> texts_;
  std::vector<Check> checks_;
  double timing_ms_ = -1;
};

}  // namespace xprod::cli
