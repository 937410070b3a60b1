#ifndef DOMAINMINER_ORACLE_HPP
#define DOMAINMINER_ORACLE_HPP

#include "domainminer/core.hpp"

namespace domainminer {
namespace oracle {

// Enumeration limits: 2^stars fills, each scanned over all entity pairs.
inline constexpr int kMaxStars = 22;
inline constexpr int kMaxEntities = 12;

// Minimum indistinguishability-class count over all instantiations of psm.
int dbpm_optimum(const PartialMatrix& psm);

// Minimum distinct-row count over all instantiations.
int db_optimum(const PartialMatrix& psm);

// Minimum of max(distinct rows, distinct columns) over all instantiations.
int dtepm_optimum(const PartialMatrix& psm);

} // namespace oracle
} // namespace domainminer

#endif
