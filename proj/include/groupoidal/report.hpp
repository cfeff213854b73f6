#ifndef GROUPOIDAL_REPORT_HPP
#define GROUPOIDAL_REPORT_HPP

#include <string>
#include <vector>

namespace groupoidal {

struct Finding {
  std::string check;
  std::string ref;
  bool pass = true;
  std::string witness;
};

// Collects every check; never stops at the first failure.
struct ValidationReport {
  std::vector<Finding> findings;

  void add(std::string check, std::string ref, bool pass, std::string witness = {}) {
    findings.push_back({std::move(check), std::move(ref), pass, std::move(witness)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (auto f : other.findings) {
      if (!prefix.empty()) f.check = prefix + "." + f.check;
      findings.push_back(std::move(f));
    }
  }
  bool ok() const {
    for (const auto& f : findings)
      if (!f.pass) return false;
    return true;
  }
  const Finding* find(const std::string& check) const {
    for (const auto& f : findings)
      if (f.check == check) return &f;
    return nullptr;
  }
  bool passed(const std::string& check) const {
    const Finding* f = find(check);
    return f && f->pass;
  }
  std::string summary() const;
};

}  // namespace groupoidal

#endif
