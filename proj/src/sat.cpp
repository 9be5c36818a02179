#include "sta/sat.hpp"

#include <cstdint>
#include <cstdlib>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "sta/errors.hpp"

namespace sta {

void SatInstance::validate() const {
  if (num_vars < 1) throw ValidationError("formula needs at least one variable");
  std::map<int, std::set<size_t>> occurrences;  // literal -> clauses containing it
  for (size_t c = 0; c < clauses.size(); ++c) {
    if (clauses[c].empty()) throw ValidationError("clause " + std::to_string(c + 1) + " is empty");
    for (int lit : clauses[c]) {
      const int var = std::abs(lit);
      if (lit == 0 || var > num_vars)
        throw ValidationError("literal " + std::to_string(lit) + " out of range in clause " +
                              std::to_string(c + 1));
      if (!occurrences[lit].insert(c).second)
        throw ValidationError("literal " + std::to_string(lit) + " repeated inside clause " +
                              std::to_string(c + 1));
    }
  }
  for (int v = 1; v <= num_vars; ++v) {
    for (int lit : {v, -v}) {
      const auto it = occurrences.find(lit);
      const size_t uses = it == occurrences.end() ? 0 : it->second.size();
      if (uses != 2)
        throw ValidationError("literal " + std::to_string(lit) + " occurs in " +
                              std::to_string(uses) + " clauses, the variant requires exactly 2");
    }
  }
}

SatInstance parse_dimacs(std::istream& in) {
  SatInstance sat;
  int declared_clauses = -1;
  std::string line;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream row(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      if (!(row >> p >> cnf >> sat.num_vars >> declared_clauses) || cnf != "cnf")
        throw ValidationError("malformed DIMACS header: " + line);
      continue;
    }
    int lit;
    while (row >> lit) {
      if (lit == 0) {
        sat.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) sat.clauses.push_back(current);  // tolerate a missing trailing 0
  if (declared_clauses < 0) throw ValidationError("missing DIMACS header");
  if (static_cast<int>(sat.clauses.size()) != declared_clauses)
    throw ValidationError("header declares " + std::to_string(declared_clauses) +
                          " clauses, file has " + std::to_string(sat.clauses.size()));
  return sat;
}

SatInstance parse_dimacs_text(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

bool truth_table_satisfiable(const SatInstance& sat) {
  if (sat.num_vars > 24) throw ValidationError("truth-table check limited to 24 variables");
  for (std::uint64_t assignment = 0; assignment < (1ULL << sat.num_vars); ++assignment) {
    bool all = true;
    for (const auto& clause : sat.clauses) {
      bool any = false;
      for (int lit : clause) {
        const bool value = (assignment >> (std::abs(lit) - 1)) & 1;
        if (lit > 0 ? value : !value) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace sta
