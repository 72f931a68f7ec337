// Machine-readable verification reports: ordered key = value lines with an
// overall pass flag folded from the individual checks.  Reports carry no
// timestamps or environment data, so identical runs produce identical bytes.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bsar {

class VerificationReport {
 public:
  void put(const std::string& key, const std::string& value);
  void put(const std::string& key, double value);
  void put(const std::string& key, bool value);

  /// Records "pass"/"fail" under `key` and folds `ok` into passed().
  void put_check(const std::string& key, bool ok);

  bool passed() const { return passed_; }

  /// One "key = value" line per entry, in insertion order, ending with the
  /// folded "passed" line.
  std::string text() const;

  /// Writes text() to a file.  Throws std::runtime_error on I/O failure.
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  bool passed_ = true;
};

}  // namespace bsar
