#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrg/bounds.hpp"
#include "qrg/group.hpp"
#include "qrg/subset.hpp"

namespace qrg {

enum class Pattern { forward_products, pairs, pairs_inverse, custom_words };

std::string pattern_name(Pattern p);
Pattern pattern_from_name(const std::string& name);

// One occurrence of a variable inside a word; var is 1-based.
struct Symbol {
  int var = 0;
  bool inverse = false;

  bool operator==(const Symbol&) const = default;
};

using Word = std::vector<Symbol>;

// A word-valued membership constraint.  Absent constraints mean the full
// group, so only proper sets are stored.
struct Constraint {
  Word word;
  Subset set;
};

// Variable subsets F encoded as bitmasks: bit v-1 set means x_v occurs.
using VarMask = std::uint32_t;

Word forward_word(VarMask mask);

class ConstraintSystem {
 public:
  // product over F in ascending index order, one constraint per nonempty mask
  static ConstraintSystem forward_products(const FiniteGroup& group, int m,
                                           const std::map<VarMask, Subset>& sets);
  // x_i x_j (or x_i x_j^{-1}) for i < j; masks must have exactly two bits
  static ConstraintSystem pairwise(const FiniteGroup& group, int m,
                                   const std::map<VarMask, Subset>& sets, bool inverse);
  // arbitrary admissible words; sets keyed by 1-based word index, missing = full.
  // Admissible means: processing variables in order, each word containing x_h
  // has x_h or x_h^{-1} first or last once already-fixed variables are deleted,
  // and no variable appears twice in one word.
  static ConstraintSystem custom_words(const FiniteGroup& group, int m,
                                       const std::vector<Word>& words,
                                       const std::map<int, Subset>& sets);

  const FiniteGroup& group() const { return group_; }
  int variables() const { return m_; }
  Pattern pattern() const { return pattern_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

  // density of the set attached to a variable mask (1 when absent);
  // forward-products and pairwise systems only
  double density(VarMask mask) const;

 private:
  ConstraintSystem(FiniteGroup group, int m, Pattern pattern)
      : group_(std::move(group)), m_(m), pattern_(pattern) {}

  FiniteGroup group_;
  int m_ = 0;
  Pattern pattern_ = Pattern::forward_products;
  std::vector<Constraint> constraints_;
  std::map<VarMask, std::size_t> by_mask_;
};

// Product-of-densities condition over the windows A_{h,E}: for every h < m and
// nonempty E within {h+1..m}, the product of p_F over F = U union V with
// max U < h and V one of {h}, E, {h} union E must reach 2^{3m}/k.
struct DensityCondition {
  bool pass = false;
  double threshold = 0.0;
  double worst_margin = 0.0;  // smallest product/threshold seen

  struct Term {
    std::string id;
    double product = 0.0;
  };
  std::vector<Term> failures;
};

DensityCondition check_density_condition(const ConstraintSystem& sys, double k);

// Sharper three-variable variant: the four window products
// p1 p2 p12, p1 p3 p13, p1 p23 p123, p2 p3 p23 p12 p13 p123
// must all reach 16/k.
DensityCondition check_density_condition_m3(const ConstraintSystem& sys, double k);

enum class SolveStatus { solved, exhausted, density_warning_solved, density_warning_exhausted };

std::string solve_status_name(SolveStatus s);
bool solve_succeeded(SolveStatus s);

struct StepTrace {
  int variable = 0;               // 1-based
  Index pool = 0;                 // candidate pool size at this level
  Index evaluated = 0;            // candidates examined before the choice
  Index passing = 0;              // of those, how many met the threshold
  double threshold_factor = 0.0;  // 1 - 2^{-m_cur}; 0 at the two-variable base scan
  Index chosen = -1;
  bool chose_passing = false;
  int attempt = 0;  // 1-based attempt number at this level
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::exhausted;
  std::vector<Index> witness;     // one element per variable when solved
  std::vector<StepTrace> trace;   // successful path, or the last path attempted
  std::optional<DensityCondition> density;  // present when k was supplied
};

// Greedy left-to-right assignment.  At each level the candidates for the
// current variable are walked in seeded random order; a candidate is accepted
// when every residual set that merges two or more proper sources keeps density
// at least (product of source densities) * (1 - 2^{-m_cur}).  The final two
// variables are found by a complete direct scan.  At most 1 + backtrack_depth
// candidates are attempted per level: passing ones first in walk order, then
// best-effort picks by descending minimum residual density.  Every witness is
// re-verified against the original constraints before return.
SolveOutcome solve(const ConstraintSystem& sys, std::uint64_t seed, int backtrack_depth = 2,
                   const std::optional<KValue>& k = std::nullopt);

// residual constraints after fixing the current variable; merges constraints
// that collapse onto the same word (exposed for tests)
std::vector<Constraint> reduce_constraints(const FiniteGroup& group,
                                           const std::vector<Constraint>& constraints, int var,
                                           Index value);

Index evaluate_word(const FiniteGroup& group, const Word& word, std::span<const Index> witness);

struct PairwiseOutcome {
  SolveOutcome outcome;
  double min_density = 1.0;  // least density among the supplied pair sets
  double threshold = 0.0;    // 4 k^{-1/(2m-3)} when k was supplied
  std::optional<bool> condition_held;
};

PairwiseOutcome solve_pairwise(const FiniteGroup& group, int m,
                               const std::map<VarMask, Subset>& pair_sets, bool inverse,
                               std::uint64_t seed, int backtrack_depth = 2,
                               const std::optional<KValue>& k = std::nullopt);

}  // namespace qrg
