#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sumsetlab/core_sets.hpp"
#include "sumsetlab/groups.hpp"
#include "sumsetlab/nonabelian.hpp"

namespace sumsetlab::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,           // holds / structured / sweep clean
  kNegative = 1,     // not structured / counterexample found
  kMalformed = 2,    // parse failure or violated precondition
  kIncomplete = 3,   // sweep stopped by a resource limit
};

/// "0,1,3", "{0,1,3}" or "[0,1,3]".
IntSet parse_int_set(const std::string& text);

/// "(0,2),(1,3)" with one tuple per point (a first, then the inner
/// coordinates), or JSON [[0,[2]],[1,[3]]].
std::vector<ProductPoint> parse_points(const GroupPtr& inner, const std::string& text);

/// JSON array of coordinate arrays, e.g. "[[0,0,1],[1,0,1]]".
GroupSubset parse_group_subset(const GroupPtr& group, const std::string& text);

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumsetlab::cli
