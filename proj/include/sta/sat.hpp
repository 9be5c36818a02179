#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sta {

// CNF formula in the restricted variant where every literal occurs in
// exactly two different clauses (and at most once per clause).
struct SatInstance {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based literals

  // Throws ValidationError if the instance breaks the variant's rules.
  void validate() const;
};

// DIMACS-like text: "p cnf <vars> <clauses>" header, 0-terminated clause
// lines, 'c' comment lines.
SatInstance parse_dimacs(std::istream& in);
SatInstance parse_dimacs_text(const std::string& text);

// Truth-table check; exact, for small variable counts.
bool truth_table_satisfiable(const SatInstance& sat);

}  // namespace sta
