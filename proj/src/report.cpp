#include "bsar/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bsar {

void VerificationReport::put(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void VerificationReport::put(const std::string& key, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  entries_.emplace_back(key, buf);
}

void VerificationReport::put(const std::string& key, bool value) {
  entries_.emplace_back(key, value ? "true" : "false");
}

void VerificationReport::put_check(const std::string& key, bool ok) {
  entries_.emplace_back(key, ok ? "pass" : "fail");
  passed_ = passed_ && ok;
}

std::string VerificationReport::text() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  out += "passed = ";
  out += passed_ ? "true" : "false";
  out += '\n';
  return out;
}

void VerificationReport::write(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace bsar
