#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrg/bounds.hpp"
#include "qrg/chartab.hpp"
#include "qrg/error.hpp"
#include "qrg/group.hpp"
#include "qrg/io.hpp"
#include "qrg/productfree.hpp"
#include "qrg/rng.hpp"
#include "qrg/setfun.hpp"
#include "qrg/solver.hpp"
#include "qrg/spectral.hpp"
#include "qrg/subset.hpp"

namespace {

using nlohmann::json;
using namespace qrg;

int g_exit = 0;
std::ostringstream g_buf;

void emit(const std::string& text) { g_buf << text << '\n'; }

void deliver(const std::string& out_path) {
  if (out_path.empty())
    std::cout << g_buf.str();
  else
    write_text_file(out_path, g_buf.str());
}

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::dihedral: return "dihedral";
    case GroupKind::symmetric: return "symmetric";
    case GroupKind::alternating: return "alternating";
    case GroupKind::psl2: return "psl2";
    case GroupKind::direct_product: return "direct-product";
    case GroupKind::table: return "table";
  }
  return "unknown";
}

std::string num(double x) { return json(x).dump(); }

// "1,2,3" inline or "@path" pointing at a subset file
Subset parse_set(const FiniteGroup& group, const std::string& text) {
  if (!text.empty() && text[0] == '@')
    return subset_from_json(group, read_text_file(text.substr(1)));
  std::vector<Index> elems;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      fail("bad-input", "bad element list: " + text);
    long long v = std::stoll(part);
    if (v < 0 || v >= group.order()) fail("bad-input", "element out of range: " + part);
    elems.push_back(static_cast<Index>(v));
  }
  if (elems.empty()) fail("bad-input", "empty element list");
  return Subset::of(group.order(), elems);
}

std::vector<long long> parse_ints(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    json j = json::parse(read_text_file(text.substr(1)), nullptr, false);
    if (j.is_discarded() || !j.is_array()) fail("bad-input", "integer file must be a JSON array");
    std::vector<long long> out;
    for (const json& e : j) {
      if (!e.is_number_integer()) fail("bad-input", "integer file must hold integers");
      out.push_back(e.get<long long>());
    }
    return out;
  }
  std::vector<long long> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || part.find_first_not_of("-0123456789") != std::string::npos)
      fail("bad-input", "bad integer list: " + text);
    out.push_back(std::stoll(part));
  }
  if (out.empty()) fail("bad-input", "empty integer list");
  return out;
}

std::vector<Index> parse_indices(const FiniteGroup& group, const std::string& text) {
  return parse_set(group, text).elements();
}

// "auto": formula for psl2, character table otherwise; "formula"; or a number
KValue resolve_k(const FiniteGroup& group, const std::string& choice) {
  if (choice == "formula") return k_from_formula(group);
  if (choice == "auto") {
    if (group.kind() == GroupKind::psl2) return k_from_formula(group);
    return k_from_table(group);
  }
  if (choice.empty() || choice.find_first_not_of("0123456789.") != std::string::npos)
    fail("bad-input", "bad k: " + choice);
  return k_supplied(std::stod(choice));
}

// stdout must be reproducible byte for byte, so wall-clock timings stay out
BoundReport strip_runtime(BoundReport report) {
  report.runtime_seconds = 0.0;
  return report;
}

void emit_bound_report(const BoundReport& report, const std::string& format, bool& header_done) {
  if (format == "csv") {
    if (!header_done) {
      emit(bound_report_csv_header());
      header_done = true;
    }
    emit(bound_report_to_csv(strip_runtime(report)));
  } else {
    emit(bound_report_to_json(strip_runtime(report)));
  }
  if (!report.pass) g_exit = 2;
}

std::string join_indices(const std::vector<Index>& v, char sep) {
  std::string out;
  for (Index x : v) {
    if (!out.empty()) out += sep;
    out += std::to_string(x);
  }
  return out;
}

void run_verify_spectral(const FiniteGroup& group, int trials, std::uint64_t seed,
                         const KValue& k, const SpectralOptions& sopt, const std::string& format) {
  Index n = group.order();
  if (format == "csv")
    emit("trial,subset-size,lambda1,lambda2,bound,multiplicity,identity-error,pass");
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, t));
    double density = 0.1 + 0.8 * rng.uniform();
    Subset a = random_subset(n, density, rng);
    SpectralReport rep = spectral_report(group, a, sopt);
    double cycles = static_cast<double>(count_four_cycles(group, a, sopt.cap));
    double err = 0.0;
    auto rel = [](double got, double want) {
      double scale = std::max(1.0, std::abs(want));
      return std::abs(got - want) / scale;
    };
    err = std::max(err, rel(rep.lambda1, static_cast<double>(a.size())));
    err = std::max(err, rel(rep.sum_squares, static_cast<double>(a.size()) * n));
    err = std::max(err, rel(rep.sum_fourth, cycles));
    SpectralBoundReport b = verify_spectral_bound(rep, static_cast<int>(k.value));
    bool pass = err <= 1e-6 && b.pass && b.multiplicity_ok;
    if (!pass) g_exit = 2;
    if (format == "csv") {
      emit(std::to_string(t) + ',' + std::to_string(a.size()) + ',' + num(rep.lambda1) + ',' +
           num(rep.lambda2) + ',' + num(b.bound) + ',' + std::to_string(b.multiplicity) + ',' +
           num(err) + ',' + (pass ? "true" : "false"));
    } else {
      json line = {{"trial", t},           {"subset-size", a.size()},
                   {"lambda1", rep.lambda1}, {"lambda2", rep.lambda2},
                   {"bound", b.bound},     {"multiplicity", b.multiplicity},
                   {"identity-error", err}, {"pass", pass}};
      emit(line.dump());
    }
  }
}

void run_verify_bounds(const FiniteGroup& group, int trials, std::uint64_t seed, const KValue& k,
                       const std::string& statement, const std::string& format) {
  Index n = group.order();
  bool header_done = false;
  if (statement == "equivalence") {
    emit_bound_report(equivalence_report(group, trials, seed, k), format, header_done);
    return;
  }
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, t));
    if (statement == "translate") {
      Subset a = random_subset(n, 0.5 + 0.4 * rng.uniform(), rng);
      Subset b = random_subset(n, 0.5 + 0.4 * rng.uniform(), rng);
      double delta = 0.05 + 0.25 * rng.uniform();
      emit_bound_report(deficient_translates(group, a, b, delta, k).report, format, header_done);
    } else {
      Subset a = random_subset(n, 0.5 + 0.4 * rng.uniform(), rng);
      Subset b = random_subset(n, 0.5 + 0.4 * rng.uniform(), rng);
      Subset c = random_subset(n, 0.5 + 0.4 * rng.uniform(), rng);
      emit_bound_report(verify_triple_bound(group, a, b, c, k), format, header_done);
    }
  }
}

void run_verify_solver(const FiniteGroup& group, int trials, std::uint64_t seed, int backtrack,
                       const std::string& format) {
  Index n = group.order();
  if (format == "csv") emit("trial,status,witness,valid,pass");
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, t));
    std::map<VarMask, Subset> sets;
    bool solvable = false;
    for (int attempt = 0; attempt < 100 && !solvable; ++attempt) {
      sets.clear();
      double d1 = 0.3 + 0.4 * rng.uniform();
      double d2 = 0.3 + 0.4 * rng.uniform();
      double d12 = 0.3 + 0.4 * rng.uniform();
      sets.emplace(1u, random_subset(n, d1, rng));
      sets.emplace(2u, random_subset(n, d2, rng));
      sets.emplace(3u, random_subset(n, d12, rng));
      const Subset& a1 = sets.at(1u);
      const Subset& a2 = sets.at(2u);
      const Subset& a12 = sets.at(3u);
      for (Index x = 0; x < n && !solvable; ++x) {
        if (!a1.test(x)) continue;
        for (Index y = 0; y < n; ++y)
          if (a2.test(y) && a12.test(group.mult(x, y))) {
            solvable = true;
            break;
          }
      }
    }
    if (!solvable) fail("bad-input", "could not sample a solvable instance");
    ConstraintSystem sys = ConstraintSystem::forward_products(group, 2, sets);
    SolveOutcome out = solve(sys, derive_seed(seed, t), backtrack);
    bool valid = solve_succeeded(out.status);
    if (valid)
      for (const Constraint& c : sys.constraints())
        if (!c.set.test(evaluate_word(group, c.word, out.witness))) valid = false;
    bool pass = solve_succeeded(out.status) && valid;
    if (!pass) g_exit = 2;
    if (format == "csv") {
      emit(std::to_string(t) + ',' + solve_status_name(out.status) + ',' +
           join_indices(out.witness, ';') + ',' + (valid ? "true" : "false") + ',' +
           (pass ? "true" : "false"));
    } else {
      json line = {{"trial", t},
                   {"status", solve_status_name(out.status)},
                   {"witness", out.witness},
                   {"valid", valid},
                   {"pass", pass}};
      emit(line.dump());
    }
  }
}

void run_verify_productfree(const FiniteGroup& group, int trials, std::uint64_t seed,
                            const std::string& format) {
  Index n = group.order();
  if (n < 2) fail("bad-input", "group too small for coset constructions");
  bool perm = group.kind() == GroupKind::symmetric || group.kind() == GroupKind::alternating;
  if (format == "csv") emit("trial,coset-size,coset-ok,erdos-size,erdos-ok,rep-size,rep-ok,pass");
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, t));
    SearchResult coset;
    bool found = false;
    for (int attempt = 0; attempt < 50 && !found; ++attempt) {
      std::vector<Index> gens;
      int count = 1 + static_cast<int>(rng.below(2));
      for (int i = 0; i < count; ++i) gens.push_back(static_cast<Index>(rng.below(n)));
      std::vector<Index> closure = subgroup_closure(group, gens);
      if (static_cast<Index>(closure.size()) == n) continue;
      coset = coset_product_free(group, gens);
      found = true;
    }
    if (!found) coset = coset_product_free(group, {group.identity()});
    bool coset_ok = coset.verified;

    std::size_t want = 5 + rng.below(46);
    std::vector<long long> ints;
    for (std::size_t i = 0; i < want; ++i) {
      long long mag = 1 + static_cast<long long>(rng.below(1'000'000));
      ints.push_back(rng.below(2) ? -mag : mag);
    }
    std::vector<long long> chosen = erdos_sum_free(ints);
    std::vector<long long> distinct = ints;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::size_t need = (distinct.size() + 2) / 3;
    bool erdos_ok = chosen.size() >= need && is_sum_free(chosen);

    Index rep_size = 0;
    bool rep_ok = true;
    if (perm) {
      SearchResult rep = rep_cluster_product_free(group, 0.05);
      rep_size = rep.size;
      rep_ok = rep.verified;
    }
    bool pass = coset_ok && erdos_ok && rep_ok;
    if (!pass) g_exit = 2;
    if (format == "csv") {
      emit(std::to_string(t) + ',' + std::to_string(coset.size) + ',' +
           (coset_ok ? "true" : "false") + ',' + std::to_string(chosen.size()) + ',' +
           (erdos_ok ? "true" : "false") + ',' + std::to_string(rep_size) + ',' +
           (rep_ok ? "true" : "false") + ',' + (pass ? "true" : "false"));
    } else {
      json line = {{"trial", t},
                   {"coset-size", coset.size},
                   {"coset-ok", coset_ok},
                   {"erdos-size", chosen.size()},
                   {"erdos-ok", erdos_ok},
                   {"pass", pass}};
      if (perm) {
        line["rep-size"] = rep_size;
        line["rep-ok"] = rep_ok;
      }
      emit(line.dump());
    }
  }
}

std::string complex_cell(std::complex<double> z) {
  std::string out = num(z.real());
  out += z.imag() < 0 ? "" : "+";
  out += num(z.imag()) + "i";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite group quasirandomness laboratory"};
  app.require_subcommand(1);

  // group
  auto* c_group = app.add_subcommand("group", "construct a group, describe it or export its Cayley table");
  std::string gr_type, gr_out;
  bool gr_export = false;
  c_group->add_option("--type", gr_type, "group descriptor, e.g. psl2:7 or cyclic:12")->required();
  c_group->add_flag("--export", gr_export, "emit the Cayley table; first line is the order");
  c_group->add_option("--out", gr_out, "write output to this file instead of stdout");
  c_group->callback([&] {
    FiniteGroup g = make_group(gr_type);
    if (gr_export) {
      std::ostringstream table;
      export_cayley_table(g, table);
      g_buf << table.str();
    } else {
      json j = {{"descriptor", g.descriptor()},
                {"order", g.order()},
                {"kind", kind_name(g.kind())},
                {"identity", g.identity()},
                {"generators", g.generators()},
                {"cayley-table-cached", g.has_cayley_table()}};
      emit(j.dump());
    }
    deliver(gr_out);
  });

  // spectrum
  auto* c_spec = app.add_subcommand("spectrum", "singular values of a subset's bipartite Cayley graph");
  std::string sp_group, sp_a, sp_format = "json", sp_out;
  std::uint64_t sp_seed = 0;
  double sp_density = -1.0, sp_tolerance = 0.0;
  Index sp_size = -1, sp_cap = 1200;
  bool sp_vectors = false;
  c_spec->add_option("--group", sp_group, "group descriptor")->required();
  c_spec->add_option("--A", sp_a, "subset: comma list of indices or @file");
  c_spec->add_option("--density", sp_density, "sample a random subset of this density");
  c_spec->add_option("--size", sp_size, "sample a random subset of this size");
  c_spec->add_option("--seed", sp_seed, "seed for sampled subsets");
  c_spec->add_option("--tolerance", sp_tolerance, "cluster tolerance; 0 picks max(1e-6*lambda1, 1e-9)");
  c_spec->add_option("--cap-spectral", sp_cap, "largest group order accepted");
  c_spec->add_flag("--vectors", sp_vectors, "include zero-sum eigenvectors");
  c_spec->add_option("--format", sp_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  c_spec->add_option("--out", sp_out, "write output to this file instead of stdout");
  c_spec->callback([&] {
    FiniteGroup g = make_group(sp_group);
    Subset a;
    if (!sp_a.empty()) {
      a = parse_set(g, sp_a);
    } else if (sp_size >= 0) {
      SplitMix64 rng(sp_seed);
      a = random_subset_of_size(g.order(), sp_size, rng);
    } else if (sp_density >= 0.0) {
      SplitMix64 rng(sp_seed);
      a = random_subset(g.order(), sp_density, rng);
    } else {
      fail("bad-input", "no subset given; use --A, --density or --size");
    }
    SpectralOptions opt;
    opt.cap = sp_cap;
    opt.tolerance = sp_tolerance;
    opt.vectors = sp_vectors;
    SpectralReport rep = spectral_report(g, a, opt);
    if (sp_format == "csv") {
      emit("kind,index,value");
      for (Eigen::Index i = 0; i < rep.singular_values.size(); ++i)
        emit("singular," + std::to_string(i) + ',' + num(rep.singular_values[i]));
      for (Eigen::Index i = 0; i < rep.zero_sum_values.size(); ++i)
        emit("zero-sum," + std::to_string(i) + ',' + num(rep.zero_sum_values[i]));
    } else {
      emit(spectral_report_to_json(rep));
    }
    deliver(sp_out);
  });

  // chartab
  auto* c_chartab = app.add_subcommand("chartab", "character table with irreducible dimensions");
  std::string ct_group, ct_format = "json", ct_out;
  Index ct_cap_order = 5000;
  int ct_cap_classes = 40;
  c_chartab->add_option("--group", ct_group, "group descriptor")->required();
  c_chartab->add_option("--cap-order", ct_cap_order, "largest group order accepted");
  c_chartab->add_option("--cap-classes", ct_cap_classes, "largest class count accepted");
  c_chartab->add_option("--format", ct_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  c_chartab->add_option("--out", ct_out, "write output to this file instead of stdout");
  c_chartab->callback([&] {
    FiniteGroup g = make_group(ct_group);
    ChartabOptions opt;
    opt.order_cap = ct_cap_order;
    opt.class_cap = ct_cap_classes;
    CharacterTable table = character_table(g, opt);
    if (ct_format == "csv") {
      std::string header = "dim";
      for (Index rep : table.representatives) header += ",class-" + std::to_string(rep);
      emit(header);
      for (Eigen::Index r = 0; r < table.table.rows(); ++r) {
        std::string row = std::to_string(table.dims[r]);
        for (Eigen::Index c = 0; c < table.table.cols(); ++c)
          row += ',' + complex_cell(table.table(r, c));
        emit(row);
      }
    } else {
      emit(character_table_to_json(table));
    }
    deliver(ct_out);
  });

  // triples
  auto* c_triples = app.add_subcommand("triples", "count products a*b=c with a,b,c in the given sets");
  std::string tr_group, tr_a, tr_b, tr_c, tr_format = "json", tr_out;
  c_triples->add_option("--group", tr_group, "group descriptor")->required();
  c_triples->add_option("--A", tr_a, "first set")->required();
  c_triples->add_option("--B", tr_b, "second set")->required();
  c_triples->add_option("--C", tr_c, "target set")->required();
  c_triples->add_option("--format", tr_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  c_triples->add_option("--out", tr_out, "write output to this file instead of stdout");
  c_triples->callback([&] {
    FiniteGroup g = make_group(tr_group);
    Subset a = parse_set(g, tr_a), b = parse_set(g, tr_b), c = parse_set(g, tr_c);
    std::int64_t count = count_triples(g, a, b, c);
    double expected = static_cast<double>(a.size()) * b.size() * c.size() / g.order();
    if (tr_format == "csv") {
      emit("group,a-size,b-size,c-size,count,expected");
      emit(g.descriptor() + ',' + std::to_string(a.size()) + ',' + std::to_string(b.size()) +
           ',' + std::to_string(c.size()) + ',' + std::to_string(count) + ',' + num(expected));
    } else {
      json j = {{"group", g.descriptor()}, {"a-size", a.size()},   {"b-size", b.size()},
                {"c-size", c.size()},      {"count", count},       {"expected", expected}};
      emit(j.dump());
    }
    deliver(tr_out);
  });

  // quadruples
  auto* c_quad = app.add_subcommand("quadruples", "quadruple sum and quasirandomness constant of a function");
  std::string qd_group, qd_a, qd_file, qd_out, qd_format = "json";
  std::uint64_t qd_seed = 0;
  bool qd_balanced = false;
  c_quad->add_option("--group", qd_group, "group descriptor")->required();
  c_quad->add_option("--A", qd_a, "indicator of this subset");
  c_quad->add_option("--file", qd_file, "function file (JSON with re/im arrays)");
  c_quad->add_flag("--balanced", qd_balanced, "random +-1 balanced function");
  c_quad->add_option("--seed", qd_seed, "seed for --balanced");
  c_quad->add_option("--format", qd_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  c_quad->add_option("--out", qd_out, "write output to this file instead of stdout");
  c_quad->callback([&] {
    FiniteGroup g = make_group(qd_group);
    GroupFunction f;
    if (!qd_a.empty()) {
      f = indicator(parse_set(g, qd_a));
    } else if (!qd_file.empty()) {
      f = function_from_json(g, read_text_file(qd_file));
    } else if (qd_balanced) {
      SplitMix64 rng(qd_seed);
      f = random_balanced_function(g.order(), rng);
    } else {
      fail("bad-input", "no function given; use --A, --file or --balanced");
    }
    double quadruples = count_quadruples(g, f);
    QuasirandomnessResult r = quasirandomness_constant(g, f);
    if (qd_format == "csv") {
      emit("group,quadruples,constant,balanced,modulus-ok");
      emit(g.descriptor() + ',' + num(quadruples) + ',' + num(r.value) + ',' +
           (r.balanced ? "true" : "false") + ',' + (r.modulus_ok ? "true" : "false"));
    } else {
      json j = {{"group", g.descriptor()},
                {"quadruples", quadruples},
                {"constant", r.value},
                {"balanced", r.balanced},
                {"modulus-ok", r.modulus_ok}};
      emit(j.dump());
    }
    deliver(qd_out);
  });

  // verify
  auto* c_verify = app.add_subcommand("verify", "run a seeded property suite and report pass/fail per trial");
  std::string vf_suite, vf_group, vf_statement = "triple", vf_k = "auto", vf_format = "json", vf_out;
  std::uint64_t vf_seed = 0;
  int vf_trials = 20, vf_backtrack = 2;
  double vf_tolerance = 0.0;
  Index vf_cap = 1200;
  c_verify->add_option("--suite", vf_suite, "spectral, bounds, solver or productfree")
      ->required()
      ->check(CLI::IsMember({"spectral", "bounds", "solver", "productfree"}));
  c_verify->add_option("--group", vf_group, "group descriptor")->required();
  c_verify->add_option("--trials", vf_trials, "number of seeded trials");
  c_verify->add_option("--seed", vf_seed, "master seed");
  c_verify->add_option("--statement", vf_statement, "bounds suite: triple, translate or equivalence")
      ->check(CLI::IsMember({"triple", "translate", "equivalence"}));
  c_verify->add_option("--k", vf_k, "auto, formula or an explicit value");
  c_verify->add_option("--tolerance", vf_tolerance, "spectral cluster tolerance");
  c_verify->add_option("--cap-spectral", vf_cap, "largest group order accepted by the spectral suite");
  c_verify->add_option("--backtrack", vf_backtrack, "solver backtrack depth");
  c_verify->add_option("--format", vf_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  c_verify->add_option("--out", vf_out, "write output to this file instead of stdout");
  c_verify->callback([&] {
    FiniteGroup g = make_group(vf_group);
    if (vf_trials < 1) fail("bad-input", "trials must be positive");
    if (vf_suite == "spectral") {
      SpectralOptions opt;
      opt.cap = vf_cap;
      opt.tolerance = vf_tolerance;
      run_verify_spectral(g, vf_trials, vf_seed, resolve_k(g, vf_k), opt, vf_format);
    } else if (vf_suite == "bounds") {
      run_verify_bounds(g, vf_trials, vf_seed, resolve_k(g, vf_k), vf_statement, vf_format);
    } else if (vf_suite == "solver") {
      run_verify_solver(g, vf_trials, vf_seed, vf_backtrack, vf_format);
    } else {
      run_verify_productfree(g, vf_trials, vf_seed, vf_format);
    }
    deliver(vf_out);
  });

  // solve
  auto* c_solve = app.add_subcommand("solve", "run the greedy constraint solver on a system file");
  std::string sv_system, sv_k = "none", sv_out;
  std::uint64_t sv_seed = 0;
  int sv_backtrack = 2;
  c_solve->add_option("--system", sv_system, "constraint-system JSON file")->required();
  c_solve->add_option("--seed", sv_seed, "seed for candidate order");
  c_solve->add_option("--backtrack", sv_backtrack, "extra candidates retried per level");
  c_solve->add_option("--k", sv_k, "none, auto, formula or a value; enables the density check");
  c_solve->add_option("--out", sv_out, "write output to this file instead of stdout");
  c_solve->callback([&] {
    ConstraintSystem sys = constraint_system_from_json(read_text_file(sv_system));
    std::optional<KValue> k;
    if (sv_k != "none") k = resolve_k(sys.group(), sv_k);
    SolveOutcome out = solve(sys, sv_seed, sv_backtrack, k);
    emit(solve_outcome_to_json(out));
    // a failure under a passing density condition breaks the solver guarantee
    if (out.status == SolveStatus::exhausted && out.density && out.density->pass) g_exit = 2;
    deliver(sv_out);
  });

  // productfree
  auto* c_pf = app.add_subcommand("productfree", "construct or search for product-free sets");
  std::string pf_mode, pf_group, pf_gens, pf_ints, pf_out;
  double pf_delta = 0.05;
  c_pf->add_option("--mode", pf_mode, "exact, coset, erdos or rep")
      ->required()
      ->check(CLI::IsMember({"exact", "coset", "erdos", "rep"}));
  c_pf->add_option("--group", pf_group, "group descriptor (exact, coset, rep)");
  c_pf->add_option("--generators", pf_gens, "subgroup generators for coset mode");
  c_pf->add_option("--ints", pf_ints, "integers for erdos mode: comma list or @file");
  c_pf->add_option("--delta", pf_delta, "cluster radius parameter for rep mode");
  c_pf->add_option("--out", pf_out, "write output to this file instead of stdout");
  c_pf->callback([&] {
    SearchResult result;
    if (pf_mode == "erdos") {
      if (pf_ints.empty()) fail("bad-input", "erdos mode needs --ints");
      std::vector<long long> ints = parse_ints(pf_ints);
      std::vector<long long> chosen = erdos_sum_free(ints);
      std::vector<long long> distinct = ints;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      std::size_t need = (distinct.size() + 2) / 3;
      result.method = "erdos";
      result.elements = chosen;
      result.size = static_cast<Index>(chosen.size());
      result.verified = chosen.size() >= need && is_sum_free(chosen);
    } else {
      if (pf_group.empty()) fail("bad-input", "this mode needs --group");
      FiniteGroup g = make_group(pf_group);
      if (pf_mode == "exact") {
        result = max_product_free_exact(g);
      } else if (pf_mode == "coset") {
        if (pf_gens.empty()) fail("bad-input", "coset mode needs --generators");
        result = coset_product_free(g, parse_indices(g, pf_gens));
      } else {
        result = rep_cluster_product_free(g, pf_delta);
      }
    }
    emit(search_result_to_json(result));
    if (!result.verified) g_exit = 2;
    deliver(pf_out);
  });

  // sweep
  auto* c_sweep = app.add_subcommand("sweep", "CSV grid of second singular values against the bound");
  std::vector<std::string> sw_groups;
  std::string sw_densities = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string sw_k = "auto", sw_out;
  std::uint64_t sw_seed = 0;
  int sw_trials = 1;
  Index sw_cap = 1200;
  c_sweep->add_option("--group", sw_groups, "group descriptor (repeatable)")->required();
  c_sweep->add_option("--densities", sw_densities, "comma list of subset densities");
  c_sweep->add_option("--trials", sw_trials, "subsets per density");
  c_sweep->add_option("--seed", sw_seed, "master seed");
  c_sweep->add_option("--k", sw_k, "auto, formula or an explicit value");
  c_sweep->add_option("--cap-spectral", sw_cap, "largest group order accepted");
  c_sweep->add_option("--out", sw_out, "write output to this file instead of stdout");
  c_sweep->callback([&] {
    std::vector<double> densities;
    std::istringstream in(sw_densities);
    std::string part;
    while (std::getline(in, part, ',')) {
      if (part.empty()) fail("bad-input", "bad density list: " + sw_densities);
      densities.push_back(std::stod(part));
    }
    if (densities.empty()) fail("bad-input", "empty density list");
    emit("group,size,lambda2,bound,pass");
    SpectralOptions opt;
    opt.cap = sw_cap;
    int row = 0;
    for (const std::string& name : sw_groups) {
      FiniteGroup g = make_group(name);
      KValue k = resolve_k(g, sw_k);
      for (double density : densities)
        for (int t = 0; t < sw_trials; ++t, ++row) {
          SplitMix64 rng(derive_seed(sw_seed, row));
          Subset a = random_subset(g.order(), density, rng);
          SpectralBoundReport b =
              verify_spectral_bound(g, a, static_cast<int>(k.value), opt);
          if (!b.pass) g_exit = 2;
          emit(g.descriptor() + ',' + std::to_string(a.size()) + ',' + num(b.lambda2) + ',' +
               num(b.bound) + ',' + (b.pass ? "true" : "false"));
        }
    }
    deliver(sw_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error usage: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error " << e.code() << ": " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
