#pragma once

#include <stdexcept>
#include <string>

namespace ultra {

// Malformed documents or tables: bad numerals, asymmetry, duplicate names,
// nonzero diagonal. The CLI maps these to exit status 2.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its contract: non-ultrametric input where
// an ultrametric is required, empty subsets, size caps exceeded. The CLI
// maps these to exit status 1 (the analysis falsified a claimed property).
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A mathematically guaranteed cross-check failed. Must never fire; a test
// that triggers one is a build-stopping bug.
class invariant_error : public std::logic_error {
public:
  explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ultra
