#include "qrg/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "qrg/error.hpp"
#include "qrg/rng.hpp"

namespace qrg {
namespace {

constexpr int kMaxVariables = 20;

std::vector<int> word_key(const Word& w) {
  std::vector<int> key;
  key.reserve(w.size());
  for (const Symbol& s : w) key.push_back(s.var * 2 + (s.inverse ? 1 : 0));
  return key;
}

void validate_word(const Word& word, int m) {
  if (word.empty()) fail("bad-input", "empty constraint word");
  std::uint32_t seen = 0;
  for (const Symbol& s : word) {
    if (s.var < 1 || s.var > m) fail("bad-input", "word variable outside 1..m");
    std::uint32_t bit = 1u << (s.var - 1);
    if (seen & bit) fail("bad-input", "variable repeated inside one word");
    seen |= bit;
  }
}

// Processing variables in ascending order, every word containing x_h must have
// it first or last once lower-numbered variables are deleted.
void validate_admissible(const std::vector<Word>& words, int m) {
  for (const Word& word : words) {
    for (int h = 1; h <= m; ++h) {
      int first = -1, last = -1, at = -1;
      int pos = 0;
      for (const Symbol& s : word) {
        if (s.var < h) continue;
        if (first < 0) first = pos;
        last = pos;
        if (s.var == h) at = pos;
        ++pos;
      }
      if (at >= 0 && at != first && at != last)
        fail("bad-input", "word not reducible in variable order");
    }
  }
}

void require_universe(const FiniteGroup& group, const Subset& s) {
  if (s.universe() != group.order())
    fail("bad-input", "constraint set universe does not match the group order");
}

// One merged residual constraint plus the bookkeeping the acceptance threshold
// needs: how many proper sets were intersected and their cardinality product.
struct Build {
  Word word;
  Subset set;
  int sources = 0;
  unsigned __int128 source_cards = 1;
};

// Substitutes x_var = value.  Words shrink at their boundary; fully determined
// constraints are membership-checked (false means the candidate is infeasible);
// constraints collapsing onto one word are intersected.
bool reduce_core(const FiniteGroup& group, const std::vector<Constraint>& constraints, int var,
                 Index value, std::vector<Build>& out) {
  std::map<std::vector<int>, std::size_t> slot;
  for (const Constraint& c : constraints) {
    bool touches = false;
    for (const Symbol& s : c.word) touches = touches || s.var == var;
    Word word;
    Subset set;
    if (!touches) {
      word = c.word;
      set = c.set;
    } else {
      bool at_front = c.word.front().var == var;
      const Symbol& sym = at_front ? c.word.front() : c.word.back();
      if (!at_front && c.word.back().var != var)
        fail("bad-input", "word not reducible in variable order");
      if (c.word.size() == 1) {
        Index probe = sym.inverse ? group.inv(value) : value;
        if (!c.set.test(probe)) return false;
        continue;
      }
      if (at_front) {
        // value * w in S  <=>  w in value^{-1} S   (inverse symbol flips the sign)
        set = left_translate(group, sym.inverse ? value : group.inv(value), c.set);
        word.assign(c.word.begin() + 1, c.word.end());
      } else {
        // w * value in S  <=>  w in S value^{-1}
        set = right_translate(group, c.set, sym.inverse ? value : group.inv(value));
        word.assign(c.word.begin(), c.word.end() - 1);
      }
    }
    Index card = set.size();
    auto [it, inserted] = slot.try_emplace(word_key(word), out.size());
    if (inserted) {
      out.push_back({std::move(word), std::move(set), 1, static_cast<unsigned __int128>(card)});
    } else {
      Build& b = out[it->second];
      b.set = b.set.intersect(set);
      b.sources += 1;
      b.source_cards *= static_cast<unsigned __int128>(card);
    }
  }
  return true;
}

// density(B) >= (1 - 2^{-m}) * product of source densities, compared exactly
// in integers when the magnitudes allow
bool meets_threshold(Index card, Index n, int m_cur, int sources, unsigned __int128 prod) {
  if (sources <= 1) return true;
  if (sources <= 4 && n <= (1 << 24)) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(card) << m_cur;
    for (int i = 0; i + 1 < sources; ++i) lhs *= static_cast<unsigned __int128>(n);
    unsigned __int128 rhs = prod * (((static_cast<unsigned __int128>(1)) << m_cur) - 1);
    return lhs >= rhs;
  }
  long double lhs = static_cast<long double>(card);
  for (int i = 0; i + 1 < sources; ++i) lhs *= static_cast<long double>(n);
  long double rhs =
      static_cast<long double>(prod) * (1.0L - std::ldexp(1.0L, -m_cur));
  return lhs >= rhs;
}

struct Eval {
  bool feasible = false;
  bool passing = false;
  double min_density = 1.0;
  std::vector<Constraint> reduced;
};

Eval evaluate_candidate(const FiniteGroup& group, const std::vector<Constraint>& constraints,
                        int var, Index value, int m_cur) {
  Eval e;
  std::vector<Build> builds;
  if (!reduce_core(group, constraints, var, value, builds)) return e;
  Index n = group.order();
  e.feasible = true;
  e.passing = true;
  for (Build& b : builds) {
    Index card = b.set.size();
    if (card == 0) {
      e.feasible = false;
      return e;
    }
    e.min_density = std::min(e.min_density, static_cast<double>(card) / n);
    if (!meets_threshold(card, n, m_cur, b.sources, b.source_cards)) e.passing = false;
    e.reduced.push_back({std::move(b.word), std::move(b.set)});
  }
  return e;
}

// candidate pool for the current variable: singleton-word constraints pin it
Subset candidate_pool(const FiniteGroup& group, const std::vector<Constraint>& constraints,
                      int var) {
  Subset pool = Subset::full(group.order());
  for (const Constraint& c : constraints) {
    if (c.word.size() != 1 || c.word.front().var != var) continue;
    pool = pool.intersect(c.word.front().inverse ? inverse_set(group, c.set) : c.set);
  }
  return pool;
}

struct Search {
  const FiniteGroup& group;
  int m_total;
  int backtrack;
  SplitMix64 rng;
  std::vector<Index> witness;
  std::vector<StepTrace> trace;
};

// complete scan over the last two variables
bool base_scan(Search& s, const std::vector<Constraint>& constraints, int var) {
  Index n = s.group.order();
  std::vector<Index> candidates = candidate_pool(s.group, constraints, var).elements();
  shuffle(candidates, s.rng);
  Index evaluated = 0;
  for (Index g : candidates) {
    ++evaluated;
    std::vector<Build> builds;
    if (!reduce_core(s.group, constraints, var, g, builds)) continue;
    Subset final_pool = Subset::full(n);
    bool feasible = true;
    for (const Build& b : builds) {
      if (b.word.size() != 1 || b.word.front().var != var + 1)
        fail("bad-input", "word not reducible in variable order");
      final_pool =
          final_pool.intersect(b.word.front().inverse ? inverse_set(s.group, b.set) : b.set);
      if (final_pool.empty()) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    Index h = final_pool.elements().front();
    s.witness[var - 1] = g;
    s.witness[var] = h;
    s.trace[var - 1] = {var, static_cast<Index>(candidates.size()), evaluated, evaluated,
                        0.0,  g,
                        true, 1};
    s.trace[var] = {var + 1, final_pool.size(), 1, 1, 0.0, h, true, 1};
    return true;
  }
  s.trace[var - 1] = {var,   static_cast<Index>(candidates.size()),
                      evaluated, 0,
                      0.0,   -1,
                      false, 1};
  return false;
}

bool solve_level(Search& s, const std::vector<Constraint>& constraints, int var) {
  int m_cur = s.m_total - var + 1;
  if (m_cur == 2) return base_scan(s, constraints, var);

  std::vector<Index> candidates = candidate_pool(s.group, constraints, var).elements();
  shuffle(candidates, s.rng);
  double threshold_factor = 1.0 - std::ldexp(1.0, -m_cur);

  struct Fallback {
    double min_density;
    Index value;
  };
  std::vector<Fallback> fallback;
  Index evaluated = 0, passing = 0;
  int attempts = 0;
  const int attempt_cap = 1 + s.backtrack;

  for (Index g : candidates) {
    if (attempts >= attempt_cap) break;
    ++evaluated;
    Eval e = evaluate_candidate(s.group, constraints, var, g, m_cur);
    if (!e.feasible) continue;
    if (!e.passing) {
      fallback.push_back({e.min_density, g});
      continue;
    }
    ++passing;
    ++attempts;
    s.witness[var - 1] = g;
    s.trace[var - 1] = {var,  static_cast<Index>(candidates.size()),
                       evaluated, passing,
                       threshold_factor, g,
                       true, attempts};
    if (solve_level(s, e.reduced, var + 1)) return true;
  }

  std::stable_sort(fallback.begin(), fallback.end(), [](const Fallback& a, const Fallback& b) {
    return a.min_density > b.min_density;
  });
  for (const Fallback& f : fallback) {
    if (attempts >= attempt_cap) break;
    ++attempts;
    Eval e = evaluate_candidate(s.group, constraints, var, f.value, m_cur);
    s.witness[var - 1] = f.value;
    s.trace[var - 1] = {var,   static_cast<Index>(candidates.size()),
                       evaluated, passing,
                       threshold_factor, f.value,
                       false, attempts};
    if (solve_level(s, e.reduced, var + 1)) return true;
  }
  if (attempts == 0)
    s.trace[var - 1] = {var,   static_cast<Index>(candidates.size()),
                       evaluated, passing,
                       threshold_factor, -1,
                       false, 0};
  return false;
}

}  // namespace

std::string pattern_name(Pattern p) {
  switch (p) {
    case Pattern::forward_products: return "forward-products";
    case Pattern::pairs: return "pairs";
    case Pattern::pairs_inverse: return "pairs-inverse";
    case Pattern::custom_words: return "custom-words";
  }
  return "?";
}

Pattern pattern_from_name(const std::string& name) {
  if (name == "forward-products") return Pattern::forward_products;
  if (name == "pairs") return Pattern::pairs;
  if (name == "pairs-inverse") return Pattern::pairs_inverse;
  if (name == "custom-words") return Pattern::custom_words;
  fail("bad-input", "unknown pattern '" + name + "'");
}

Word forward_word(VarMask mask) {
  Word w;
  for (int v = 1; v <= kMaxVariables; ++v)
    if (mask & (1u << (v - 1))) w.push_back({v, false});
  return w;
}

std::string solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::solved: return "solved";
    case SolveStatus::exhausted: return "exhausted";
    case SolveStatus::density_warning_solved: return "density-warning-solved";
    case SolveStatus::density_warning_exhausted: return "density-warning-exhausted";
  }
  return "?";
}

bool solve_succeeded(SolveStatus s) {
  return s == SolveStatus::solved || s == SolveStatus::density_warning_solved;
}

ConstraintSystem ConstraintSystem::forward_products(const FiniteGroup& group, int m,
                                                    const std::map<VarMask, Subset>& sets) {
  if (m < 2 || m > kMaxVariables) fail("bad-input", "variable count outside 2..20");
  ConstraintSystem sys(group, m, Pattern::forward_products);
  VarMask limit = (1u << m) - 1;
  for (const auto& [mask, set] : sets) {
    if (mask < 1 || mask > limit) fail("bad-input", "constraint mask outside the variable range");
    require_universe(group, set);
    if (set.size() == static_cast<Index>(group.order())) continue;  // full sets are no-ops
    sys.by_mask_[mask] = sys.constraints_.size();
    sys.constraints_.push_back({forward_word(mask), set});
  }
  return sys;
}

ConstraintSystem ConstraintSystem::pairwise(const FiniteGroup& group, int m,
                                            const std::map<VarMask, Subset>& sets, bool inverse) {
  if (m < 2 || m > kMaxVariables) fail("bad-input", "variable count outside 2..20");
  ConstraintSystem sys(group, m, inverse ? Pattern::pairs_inverse : Pattern::pairs);
  VarMask limit = (1u << m) - 1;
  for (const auto& [mask, set] : sets) {
    if (mask < 1 || mask > limit || std::popcount(mask) != 2)
      fail("bad-input", "pair mask must name exactly two variables");
    require_universe(group, set);
    if (set.size() == static_cast<Index>(group.order())) continue;
    int i = std::countr_zero(mask) + 1;
    int j = 32 - std::countl_zero(mask);
    sys.by_mask_[mask] = sys.constraints_.size();
    sys.constraints_.push_back({{{i, false}, {j, inverse}}, set});
  }
  return sys;
}

ConstraintSystem ConstraintSystem::custom_words(const FiniteGroup& group, int m,
                                                const std::vector<Word>& words,
                                                const std::map<int, Subset>& sets) {
  if (m < 2 || m > kMaxVariables) fail("bad-input", "variable count outside 2..20");
  for (const Word& w : words) validate_word(w, m);
  validate_admissible(words, m);
  for (const auto& [index, set] : sets) {
    if (index < 1 || index > static_cast<int>(words.size()))
      fail("bad-input", "set index outside the word list");
    require_universe(group, set);
  }
  ConstraintSystem sys(group, m, Pattern::custom_words);
  std::map<std::vector<int>, std::size_t> slot;
  for (int i = 0; i < static_cast<int>(words.size()); ++i) {
    auto it = sets.find(i + 1);
    if (it == sets.end()) continue;
    if (it->second.size() == static_cast<Index>(group.order())) continue;
    auto [entry, inserted] = slot.try_emplace(word_key(words[i]), sys.constraints_.size());
    if (inserted)
      sys.constraints_.push_back({words[i], it->second});
    else {
      Constraint& c = sys.constraints_[entry->second];
      c.set = c.set.intersect(it->second);
    }
  }
  return sys;
}

double ConstraintSystem::density(VarMask mask) const {
  if (pattern_ == Pattern::custom_words)
    fail("bad-input", "mask densities are undefined for custom-word systems");
  VarMask limit = (1u << m_) - 1;
  if (mask < 1 || mask > limit) fail("bad-input", "constraint mask outside the variable range");
  auto it = by_mask_.find(mask);
  return it == by_mask_.end() ? 1.0 : constraints_[it->second].set.density();
}

DensityCondition check_density_condition(const ConstraintSystem& sys, double k) {
  if (sys.pattern() != Pattern::forward_products)
    fail("bad-input", "density condition requires a forward-products system");
  if (k < 1.0) fail("bad-input", "dimension bound must be at least 1");
  int m = sys.variables();
  DensityCondition out;
  out.threshold = std::ldexp(1.0, 3 * m) / k;
  out.pass = true;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (int h = 1; h < m; ++h) {
    VarMask h_bit = 1u << (h - 1);
    VarMask below = h_bit - 1;             // variables 1..h-1
    VarMask above_shift = h;               // E lives in bits h..m-1
    VarMask e_range = (1u << (m - h)) - 1;
    for (VarMask e = 1; e <= e_range; ++e) {
      VarMask e_mask = e << above_shift;
      double product = 1.0;
      VarMask v_options[3] = {h_bit, e_mask, h_bit | e_mask};
      for (VarMask u = 0;; u = (u - below) & below) {
        // iterate all u that are submasks of below
        for (VarMask v : v_options) product *= sys.density(u | v);
        if (u == below) break;
      }
      double margin = product / out.threshold;
      out.worst_margin = std::min(out.worst_margin, margin);
      if (product < out.threshold) {
        out.pass = false;
        std::ostringstream id;
        id << "h=" << h << " E={";
        bool first = true;
        for (int v = h + 1; v <= m; ++v)
          if (e_mask & (1u << (v - 1))) {
            if (!first) id << ",";
            id << v;
            first = false;
          }
        id << "}";
        out.failures.push_back({id.str(), product});
      }
    }
  }
  return out;
}

DensityCondition check_density_condition_m3(const ConstraintSystem& sys, double k) {
  if (sys.pattern() != Pattern::forward_products || sys.variables() != 3)
    fail("bad-input", "the sharper condition is defined for three-variable forward systems");
  if (k < 1.0) fail("bad-input", "dimension bound must be at least 1");
  auto p = [&](VarMask mask) { return sys.density(mask); };
  struct Term {
    const char* id;
    double product;
  };
  Term terms[4] = {
      {"p1 p2 p12", p(1) * p(2) * p(3)},
      {"p1 p3 p13", p(1) * p(4) * p(5)},
      {"p1 p23 p123", p(1) * p(6) * p(7)},
      {"p2 p3 p23 p12 p13 p123", p(2) * p(4) * p(6) * p(3) * p(5) * p(7)},
  };
  DensityCondition out;
  out.threshold = 16.0 / k;
  out.pass = true;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (const Term& t : terms) {
    out.worst_margin = std::min(out.worst_margin, t.product / out.threshold);
    if (t.product < out.threshold) {
      out.pass = false;
      out.failures.push_back({t.id, t.product});
    }
  }
  return out;
}

SolveOutcome solve(const ConstraintSystem& sys, std::uint64_t seed, int backtrack_depth,
                   const std::optional<KValue>& k) {
  if (backtrack_depth < 0) fail("bad-input", "negative backtrack depth");
  SolveOutcome out;
  bool density_ok = true;
  if (k && sys.pattern() == Pattern::forward_products) {
    DensityCondition general = check_density_condition(sys, k->value);
    if (general.pass) {
      out.density = general;
    } else if (sys.variables() == 3) {
      DensityCondition tight = check_density_condition_m3(sys, k->value);
      density_ok = tight.pass;
      out.density = tight.pass ? tight : general;
    } else {
      density_ok = false;
      out.density = general;
    }
  }

  bool empty_required = false;
  for (const Constraint& c : sys.constraints()) empty_required = empty_required || c.set.empty();

  int m = sys.variables();
  bool found = false;
  Search search{sys.group(), m, backtrack_depth, SplitMix64(seed), {}, {}};
  if (!empty_required) {
    search.witness.assign(m, -1);
    search.trace.resize(m);
    found = solve_level(search, sys.constraints(), 1);
  }

  if (found) {
    for (const Constraint& c : sys.constraints())
      if (!c.set.test(evaluate_word(sys.group(), c.word, search.witness)))
        fail("solver-defect", "witness failed exact re-verification");
    out.witness = search.witness;
  }
  for (const StepTrace& t : search.trace)
    if (t.variable != 0) out.trace.push_back(t);

  if (found)
    out.status = density_ok ? SolveStatus::solved : SolveStatus::density_warning_solved;
  else
    out.status = density_ok ? SolveStatus::exhausted : SolveStatus::density_warning_exhausted;
  return out;
}

std::vector<Constraint> reduce_constraints(const FiniteGroup& group,
                                           const std::vector<Constraint>& constraints, int var,
                                           Index value) {
  std::vector<Build> builds;
  if (!reduce_core(group, constraints, var, value, builds))
    fail("bad-input", "value violates a fully determined constraint");
  std::vector<Constraint> out;
  out.reserve(builds.size());
  for (Build& b : builds) out.push_back({std::move(b.word), std::move(b.set)});
  return out;
}

Index evaluate_word(const FiniteGroup& group, const Word& word, std::span<const Index> witness) {
  Index acc = group.identity();
  for (const Symbol& s : word) {
    if (s.var < 1 || s.var > static_cast<int>(witness.size()))
      fail("bad-input", "word variable outside the witness range");
    Index t = witness[s.var - 1];
    acc = group.mult(acc, s.inverse ? group.inv(t) : t);
  }
  return acc;
}

PairwiseOutcome solve_pairwise(const FiniteGroup& group, int m,
                               const std::map<VarMask, Subset>& pair_sets, bool inverse,
                               std::uint64_t seed, int backtrack_depth,
                               const std::optional<KValue>& k) {
  ConstraintSystem sys = ConstraintSystem::pairwise(group, m, pair_sets, inverse);
  PairwiseOutcome out;
  for (const auto& [mask, set] : pair_sets)
    out.min_density = std::min(out.min_density, set.density());
  if (k) {
    out.threshold = 4.0 * std::pow(k->value, -1.0 / (2 * m - 3));
    out.condition_held = out.min_density > out.threshold;
  }
  out.outcome = solve(sys, seed, backtrack_depth, k);
  return out;
}

}  // namespace qrg
