#pragma once

#include <map>
#include <string>
#include <vector>

#include "packcert/interval.hpp"
#include "packcert/packing.hpp"

namespace packcert {

enum class Relation {
  le,     ///< computed.hi <= bound.lo
  ge,     ///< computed.lo >= bound.hi
  eq,     ///< exact equality, decided in rational arithmetic
  within, ///< bound contains computed
};

/// One certified inequality or identity of the constant chain.
struct AuditStep {
  std::string name;
  std::string claim;
  Interval computed;
  Interval bound;
  Relation relation = Relation::le;
  bool pass = false;
  /// Plain double evaluation of the computed quantity.
  double estimate = 0.0;
};

struct AuditOptions {
  /// Outward widening of pi, sqrt(2) and acos(1/3), in ulps.
  int transcendental_ulps = 4;
  /// Literal substitutions such as {"12710", "12709"}; every use of the
  /// literal in the chain sees the replacement.
  std::map<std::string, std::string> tighten;
};

std::vector<AuditStep> audit_constants(const AuditOptions &opt = {});
std::vector<AuditStep> audit_c2(const AuditOptions &opt = {});
std::vector<AuditStep> audit_alpha(const AuditOptions &opt = {});
std::vector<AuditStep> audit_zeta(const AuditOptions &opt = {});
std::vector<AuditStep> audit_c0_c1_final(const AuditOptions &opt = {});

/// density(p, r) against the final bound pi/sqrt(18) + 24373/r and against
/// pi/sqrt(18) (1 + 3/r)^3 + 34402 (r + 1)^2 / (4 sqrt(2) r^3). Claims whose
/// right-hand side exceeds 1 are marked "[vacuous at this scale]".
std::vector<AuditStep> audit_bound_on_packing(const Packing &p,
                                              const std::vector<double> &r_list,
                                              const AuditOptions &opt = {});

struct Certificate {
  std::vector<AuditStep> steps;
  bool pass = false;
};

Certificate full_report(const AuditOptions &opt = {});

/// JSON list of {name, claim, computed: [lo, hi], bound: [lo, hi], pass}.
std::string certificate_json(const Certificate &cert);
/// Header: name,claim,computed_lo,computed_hi,bound_lo,bound_hi,pass
std::string certificate_csv(const Certificate &cert);

/// Lowers a decimal literal by one unit of its last digit ("1394.1" ->
/// "1394.0", "12710" -> "12709"), or a fraction's numerator by one.
std::string tighten_by_one_unit(const std::string &literal);

/// Every upper-bound literal of the chain; tightening any one of them must
/// fail the certificate.
const std::vector<std::string> &upper_bound_literals();

} // namespace packcert
