#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrg/chartab.hpp"
#include "qrg/group.hpp"
#include "qrg/subset.hpp"

namespace qrg {

// Where a representation-dimension lower bound came from.
enum class KSource { computed, formula, supplied };

struct KValue {
  double value = 1.0;
  KSource source = KSource::supplied;
};

std::string k_source_name(KSource source);

// minimal nontrivial irreducible dimension via the character table
KValue k_from_table(const FiniteGroup& group, const ChartabOptions& options = {});
// (q-1)/2 for psl2:q; errors for other kinds
KValue k_from_formula(const FiniteGroup& group);
KValue k_supplied(double value);

struct Clause {
  std::string id;
  bool applicable = false;
  bool pass = false;  // meaningful only when applicable
  double bound = 0.0;
  double observed = 0.0;
};

struct BoundReport {
  std::string statement;
  std::string group;
  std::string inputs;  // set sizes and parameters, human readable
  std::vector<Clause> clauses;
  bool pass = false;  // every applicable clause holds
  double runtime_seconds = 0.0;
};

// Clauses, writing P = |A||B||C| and T = #{(a,b,c) : ab = c}:
//   triple-positivity   applicable when P > n^3/k;          T >= 1
//   triple-count        applicable when P >= n^3/(eta^2 k); T >= (1-eta) P/n
//   triple-deviation    always;                             |T - P/n| <= sqrt(P n / k)
BoundReport verify_triple_bound(const FiniteGroup& group, const Subset& a, const Subset& b,
                                const Subset& c, const KValue& k, double eta = 0.1);

struct TranslateReport {
  Subset deficient;  // {x : |A intersect xB| <= (1-delta) |A||B|/n}
  BoundReport report;
};

// One clause, translate-deficit, at the tightest usable threshold:
// |deficient| <= t*n with t = n^2 / (delta^2 |A||B| k).  Not applicable when
// A or B is empty.
TranslateReport deficient_translates(const FiniteGroup& group, const Subset& a, const Subset& b,
                                     double delta, const KValue& k);

// Cross-metric sweep: seeded random subsets and balanced functions on one group.
// Clauses:
//   four-cycle-excess  labelled 4-cycle count <= |A|^4 + n^2 |A|^2 / k on every
//                      sampled subset; observed is the worst count/bound ratio
//   balanced-fourth    c3 of every sampled balanced function lies in [0,1]
//   character-probe    cyclic groups only: a nontrivial character gives c3 = 1
BoundReport equivalence_report(const FiniteGroup& group, int samples, std::uint64_t seed,
                               const KValue& k);

}  // namespace qrg
