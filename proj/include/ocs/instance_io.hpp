#pragma once

// JSON wire formats.
//
// Instance (compact, keys in this order, integers only, unknown keys rejected):
//   {"m":M,"n":N,"a":[[..N..]*M],"b":[[..N..]*M],"u":[[[..M..]*M]*N],"c_new":[[..M..]*M]}
// Result:
//   {"algo":"bimcf","rewires":R,"solve_ms":T,"x":[[[..]]],"feasible":true}
// Generator metadata (sibling file):
//   {"seed":S,"churn":F,"r":[..],"a_prime":[..],"b_prime":[..],"witness_rewires":W,"rng":"..."}

#include <string>

#include "ocs/model.hpp"
#include "ocs/reconfig.hpp"
#include "ocs/workload.hpp"

namespace ocs {

/// Malformed JSON or a document that does not match the instance schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses and shape-checks. Value invariants (signs, balances) are left to
/// validate_instance so they can be reported as invalid rather than malformed.
Instance parse_instance(const std::string& text);
std::string dump_instance(const Instance& inst);

std::string dump_result(const SolveResult& result, bool feasible);
std::string dump_metadata(const GeneratedInstance& gen);

}  // namespace ocs
