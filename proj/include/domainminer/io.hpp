#ifndef DOMAINMINER_IO_HPP
#define DOMAINMINER_IO_HPP

#include <iosfwd>
#include <string>

#include "domainminer/core.hpp"

namespace domainminer {

// Matrix file format (text, line-oriented):
//   psm <n> <k>
//   default *                      (optional; unlisted cells become Star)
//   name entity <index> <label>    (optional string table)
//   name right <index> <label>
//   <u> <a> <v> <0|1|*>            one line per cell
// '#' starts a comment. Without a "default *" line the cell listing must be
// exhaustive. Duplicate cells, out-of-range indices and malformed lines are
// parse errors carrying the offending line number.
PartialMatrix read_matrix(std::istream& in);
PartialMatrix read_matrix_file(const std::string& path);

void write_matrix(const PartialMatrix& psm, std::ostream& out);
void write_matrix_file(const PartialMatrix& psm, const std::string& path);

// Policy output: {"domains": m, "assignment": [..], "summary_edges": [[p,a,q],..]}
std::string policy_to_json(const DomainPolicy& policy, int indent = 2);

} // namespace domainminer

#endif
