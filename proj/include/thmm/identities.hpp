#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thmm/moments.hpp"

namespace thmm {

// Tolerance tiers, ordered by how many inverses an identity goes through.
enum class Tier { Structural, Moment, OneInverse, Nested };

enum class Applicability { Both, Even, Odd };

// Standing assumption an identity needs beyond positive definiteness.
enum class Requirement { None, HtildeInvertible, GammaInvertible };

enum class Status { Pass, Fail, NotApplicable };

std::string to_string(Tier t);
std::string to_string(Applicability a);
std::string to_string(Requirement r);
std::string to_string(Status s);

struct IdentityDescriptor {
  std::string id;     // equation label
  std::string group;  // family the identity belongs to
  Applicability parity = Applicability::Both;
  bool needs_z = false;
  Requirement requirement = Requirement::None;
  Tier tier = Tier::Moment;
  std::string delegate;  // library routine the check is delegated to, if any
};

// Registered identities in evaluation order.
const std::vector<IdentityDescriptor>& catalog();
const IdentityDescriptor* find_identity(const std::string& id);

struct TolProfile {
  double structural = 1e-13;
  double moment = 1e-11;
  double one_inverse = 1e-10;
  double nested = 1e-8;

  static TolProfile uniform(double tol);
  double for_tier(Tier t) const;
};

struct IdentityEntry {
  std::string id;
  std::optional<double> residual;  // empty when not applicable
  double tol = 0.0;
  Status status = Status::NotApplicable;
  std::string note;

  bool pass() const { return status != Status::Fail; }
};

struct InstanceDescriptor {
  int q = 1;
  int m = 0;
  double a = 0.0;
  double b = 1.0;
  std::optional<std::uint64_t> seed;
};

struct IdentityReport {
  InstanceDescriptor instance;
  std::vector<IdentityEntry> entries;
  bool overall = true;

  const IdentityEntry* find(const std::string& id) const;
};

// Evaluates every catalogued identity. Identities stated for a general
// index are checked at every index the data supports and z-dependent ones
// over the whole grid; the entry holds the worst residual. Identities that
// do not apply to the parity, or whose assumptions fail, are reported as
// not applicable.
IdentityReport run_battery(const MomentSequence& seq, const std::vector<cplx>& grid,
                           const TolProfile& profile = {},
                           std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace thmm
