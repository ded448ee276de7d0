#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "setcat/category.hpp"

namespace setcat {

enum class Status { Pass, Fail, Inconclusive, OutOfScope };

const char* status_name(Status s);

// A named bundle of maps, enough to reconstruct the squares and triangles
// that witness or refute an axiom.
struct Diagram {
  std::vector<std::pair<std::string, FinMap>> maps;
  std::string note;
};

struct AxiomReport {
  std::string axiom;
  Status status = Status::Pass;
  std::optional<Diagram> counterexample;
  std::optional<Diagram> witness;
  std::string detail;

  bool passed() const { return status == Status::Pass; }
};

}  // namespace setcat
