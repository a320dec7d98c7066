#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace systole::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Environment variable overriding the enumeration budget.
inline constexpr const char* kBudgetEnv = "SYSTOLECALC_BUDGET";

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace systole::cli
