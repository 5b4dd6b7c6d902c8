#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ksol {

struct CriterionResult {
  std::string id;     // "1" .. "12", or "11s" for the supplementary conservation check
  std::string title;
  bool pass = false;
  // Counted in the verdict; the supplementary line is informational.
  bool counted = true;
  // Failing for a documented mathematical reason rather than a defect; see notes.
  bool known_unattainable = false;
  std::vector<std::string> notes;
};

// Runs every criterion; deterministic apart from the timing notes (which are rounded to the budget).
std::vector<CriterionResult> run_acceptance();

// One "PASS"/"FAIL" line per criterion plus indented notes, then a summary line.
void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

bool all_counted_pass(const std::vector<CriterionResult>& results);
// True when every failing counted criterion is a documented known-unattainable one.
bool only_known_failures(const std::vector<CriterionResult>& results);

}  // namespace ksol
