#include "qrg/bounds.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "qrg/error.hpp"
#include "qrg/rng.hpp"
#include "qrg/setfun.hpp"
#include "qrg/spectral.hpp"

namespace qrg {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr double kSlack = 1e-9;

bool meets_lower(double observed, double bound) { return observed >= bound * (1.0 - kSlack); }
bool meets_upper(double observed, double bound) { return observed <= bound * (1.0 + kSlack); }

void finish(BoundReport& report, Clock::time_point start) {
  report.pass = true;
  for (const Clause& c : report.clauses)
    if (c.applicable && !c.pass) report.pass = false;
  report.runtime_seconds = seconds_since(start);
}

std::string describe_k(const KValue& k) {
  std::ostringstream out;
  out << k.value << "(" << k_source_name(k.source) << ")";
  return out.str();
}

}  // namespace

std::string k_source_name(KSource source) {
  switch (source) {
    case KSource::computed: return "computed";
    case KSource::formula: return "formula";
    case KSource::supplied: return "supplied";
  }
  return "?";
}

KValue k_from_table(const FiniteGroup& group, const ChartabOptions& options) {
  return {static_cast<double>(min_nontrivial_irrep_dim(group, options)), KSource::computed};
}

KValue k_from_formula(const FiniteGroup& group) {
  if (group.kind() != GroupKind::psl2)
    fail("bad-input", "dimension formula only available for psl2 groups");
  const std::string& desc = group.descriptor();
  int q = std::stoi(desc.substr(desc.find(':') + 1));
  return {(q - 1) / 2.0, KSource::formula};
}

KValue k_supplied(double value) {
  if (value < 1.0) fail("bad-input", "dimension bound must be at least 1");
  return {value, KSource::supplied};
}

BoundReport verify_triple_bound(const FiniteGroup& group, const Subset& a, const Subset& b,
                                const Subset& c, const KValue& k, double eta) {
  auto start = Clock::now();
  if (k.value < 1.0) fail("bad-input", "dimension bound must be at least 1");
  if (!(eta > 0.0 && eta <= 1.0)) fail("bad-input", "eta outside (0,1]");

  double n = group.order();
  double product = static_cast<double>(a.size()) * b.size() * c.size();
  double cube = n * n * n;
  std::int64_t triples = count_triples(group, a, b, c);
  double expected = product / n;

  BoundReport report;
  report.statement = "triple-deviation";
  report.group = group.descriptor();
  {
    std::ostringstream in;
    in << "n=" << group.order() << " |A|=" << a.size() << " |B|=" << b.size()
       << " |C|=" << c.size() << " k=" << describe_k(k) << " eta=" << eta;
    report.inputs = in.str();
  }

  Clause positivity{"triple-positivity", product * k.value > cube, false, 1.0,
                    static_cast<double>(triples)};
  if (positivity.applicable) positivity.pass = meets_lower(positivity.observed, positivity.bound);
  report.clauses.push_back(positivity);

  Clause count{"triple-count", product >= cube / (eta * eta * k.value), false,
               (1.0 - eta) * expected, static_cast<double>(triples)};
  if (count.applicable) count.pass = meets_lower(count.observed, count.bound);
  report.clauses.push_back(count);

  Clause deviation{"triple-deviation", true, false, std::sqrt(product * n / k.value),
                   std::abs(static_cast<double>(triples) - expected)};
  deviation.pass = meets_upper(deviation.observed, deviation.bound);
  report.clauses.push_back(deviation);

  finish(report, start);
  return report;
}

TranslateReport deficient_translates(const FiniteGroup& group, const Subset& a, const Subset& b,
                                     double delta, const KValue& k) {
  auto start = Clock::now();
  if (k.value < 1.0) fail("bad-input", "dimension bound must be at least 1");
  if (!(delta > 0.0 && delta <= 1.0)) fail("bad-input", "delta outside (0,1]");

  Index n = group.order();
  // |A intersect xB| read off the convolution of A with B^{-1} at x
  std::vector<std::int64_t> meets = indicator_convolve(group, a, inverse_set(group, b));
  double threshold =
      (1.0 - delta) * static_cast<double>(a.size()) * b.size() / static_cast<double>(n);

  TranslateReport out{Subset(n), {}};
  for (Index x = 0; x < n; ++x)
    if (static_cast<double>(meets[x]) <= threshold) out.deficient.set(x);

  double tightest_t = 0.0;
  bool applicable = a.size() > 0 && b.size() > 0;
  if (applicable) {
    double dn = n;
    tightest_t = dn * dn / (delta * delta * static_cast<double>(a.size()) * b.size() * k.value);
  }

  BoundReport& report = out.report;
  report.statement = "translate-deficit";
  report.group = group.descriptor();
  {
    std::ostringstream in;
    in << "n=" << n << " |A|=" << a.size() << " |B|=" << b.size() << " delta=" << delta
       << " k=" << describe_k(k) << " t=" << tightest_t;
    report.inputs = in.str();
  }
  Clause size{"translate-deficit", applicable, false, tightest_t * n,
              static_cast<double>(out.deficient.size())};
  if (size.applicable) size.pass = meets_upper(size.observed, size.bound);
  report.clauses.push_back(size);

  finish(report, start);
  return out;
}

BoundReport equivalence_report(const FiniteGroup& group, int samples, std::uint64_t seed,
                               const KValue& k) {
  auto start = Clock::now();
  if (k.value < 1.0) fail("bad-input", "dimension bound must be at least 1");
  if (samples < 0) fail("bad-input", "negative sample count");

  Index n = group.order();
  double dn = n;

  BoundReport report;
  report.statement = "cross-metric";
  report.group = group.descriptor();
  {
    std::ostringstream in;
    in << "n=" << n << " samples=" << samples << " seed=" << seed << " k=" << describe_k(k);
    report.inputs = in.str();
  }

  double worst_cycle_ratio = 0.0;
  double worst_c3 = 0.0;
  for (int t = 0; t < samples; ++t) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    double density = 0.1 + 0.8 * rng.uniform();
    Subset a = random_subset(n, density, rng);
    double sz = a.size();
    double cycle_bound = sz * sz * sz * sz + dn * dn * sz * sz / k.value;
    std::int64_t cycles = count_four_cycles(group, a);
    if (cycle_bound > 0.0)
      worst_cycle_ratio = std::max(worst_cycle_ratio, static_cast<double>(cycles) / cycle_bound);
    else if (cycles > 0)
      worst_cycle_ratio = std::max(worst_cycle_ratio, 2.0);

    GroupFunction f = random_balanced_function(n, rng);
    worst_c3 = std::max(worst_c3, quasirandomness_constant(group, f).value);
  }

  Clause cycle{"four-cycle-excess", samples > 0, false, 1.0, worst_cycle_ratio};
  if (cycle.applicable) cycle.pass = meets_upper(cycle.observed, cycle.bound);
  report.clauses.push_back(cycle);

  Clause fourth{"balanced-fourth", samples > 0, false, 1.0, worst_c3};
  if (fourth.applicable) fourth.pass = meets_upper(fourth.observed, fourth.bound);
  report.clauses.push_back(fourth);

  Clause probe{"character-probe", group.kind() == GroupKind::cyclic && n >= 2, false, 1.0, 0.0};
  if (probe.applicable) {
    probe.observed = quasirandomness_constant(group, cyclic_character(group, 1)).value;
    probe.pass = std::abs(probe.observed - 1.0) <= kSlack;
  }
  report.clauses.push_back(probe);

  finish(report, start);
  return report;
}

}  // namespace qrg
