#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pam {

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_line(const CriterionResult& r);

}  // namespace pam
