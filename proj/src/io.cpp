#include "qrg/io.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qrg/error.hpp"

namespace qrg {
namespace {

using nlohmann::json;

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail("bad-input", e.what());
  }
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json clusters_to_json(const std::vector<Cluster>& clusters) {
  json arr = json::array();
  for (const Cluster& c : clusters) arr.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  return arr;
}

json clause_to_json(const Clause& c) {
  return {{"id", c.id},
          {"applicable", c.applicable},
          {"pass", c.pass},
          {"bound", c.bound},
          {"observed", c.observed}};
}

json density_to_json(const DensityCondition& d) {
  json failures = json::array();
  for (const auto& t : d.failures) failures.push_back({{"id", t.id}, {"product", t.product}});
  return {{"pass", d.pass},
          {"threshold", d.threshold},
          {"worst-margin", d.worst_margin},
          {"failures", failures}};
}

json outcome_to_json(const SolveOutcome& outcome) {
  json trace = json::array();
  for (const StepTrace& s : outcome.trace)
    trace.push_back({{"variable", s.variable},
                     {"pool", s.pool},
                     {"evaluated", s.evaluated},
                     {"passing", s.passing},
                     {"threshold-factor", s.threshold_factor},
                     {"chosen", s.chosen},
                     {"chose-passing", s.chose_passing},
                     {"attempt", s.attempt}});
  json j = {{"status", solve_status_name(outcome.status)},
            {"witness", outcome.witness},
            {"trace", trace}};
  if (outcome.density) j["density"] = density_to_json(*outcome.density);
  return j;
}

// subset payload inside constraint files: a plain sorted index array
Subset subset_from_array(const json& arr, Index universe) {
  std::vector<Index> elems;
  for (const json& e : arr) {
    Index x = e.get<Index>();
    if (x < 0 || x >= universe) fail("bad-input", "subset element out of range");
    elems.push_back(x);
  }
  return Subset::of(universe, elems);
}

std::string symbol_name(const Symbol& s) {
  return "x" + std::to_string(s.var) + (s.inverse ? "^-1" : "");
}

Symbol parse_symbol(const std::string& text) {
  std::string digits = text;
  Symbol sym;
  if (digits.size() >= 2 && digits[0] == 'x') digits = digits.substr(1);
  else fail("bad-input", "bad word symbol: " + text);
  if (digits.size() > 3 && digits.compare(digits.size() - 3, 3, "^-1") == 0) {
    sym.inverse = true;
    digits = digits.substr(0, digits.size() - 3);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    fail("bad-input", "bad word symbol: " + text);
  sym.var = std::stoi(digits);
  if (sym.var < 1) fail("bad-input", "bad word symbol: " + text);
  return sym;
}

VarMask mask_of_word(const Word& word) {
  VarMask mask = 0;
  for (const Symbol& s : word) mask |= VarMask{1} << (s.var - 1);
  return mask;
}

std::string mask_key(VarMask mask) {
  std::string key;
  for (int v = 1; mask; ++v, mask >>= 1)
    if (mask & 1) {
      if (!key.empty()) key += ',';
      key += std::to_string(v);
    }
  return key;
}

VarMask parse_mask_key(const std::string& key, int m) {
  VarMask mask = 0;
  int last = 0;
  std::istringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      fail("bad-input", "bad set key: " + key);
    int v = std::stoi(part);
    if (v <= last || v > m) fail("bad-input", "bad set key: " + key);
    mask |= VarMask{1} << (v - 1);
    last = v;
  }
  if (mask == 0) fail("bad-input", "bad set key: " + key);
  return mask;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string num(double x) { return json(x).dump(); }

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("io-error", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail("io-error", "cannot read " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("io-error", "cannot open " + path);
  out << text;
  out.flush();
  if (!out) fail("io-error", "cannot write " + path);
}

std::string subset_to_json(const FiniteGroup& group, const Subset& a) {
  json j = {{"group", group.descriptor()}, {"elements", a.elements()}};
  return j.dump();
}

Subset subset_from_json(const FiniteGroup& group, const std::string& text) {
  return guarded([&] {
    json j = json::parse(text);
    std::string desc = j.at("group").get<std::string>();
    if (desc != group.descriptor())
      fail("bad-input", "subset file is for " + desc + ", expected " + group.descriptor());
    return subset_from_array(j.at("elements"), group.order());
  });
}

std::string function_to_json(const FiniteGroup& group, const GroupFunction& f) {
  std::vector<double> re(f.values.size()), im(f.values.size());
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    re[i] = f.values[i].real();
    im[i] = f.values[i].imag();
  }
  json j = {{"group", group.descriptor()}, {"re", re}, {"im", im}};
  return j.dump();
}

GroupFunction function_from_json(const FiniteGroup& group, const std::string& text) {
  return guarded([&] {
    json j = json::parse(text);
    std::string desc = j.at("group").get<std::string>();
    if (desc != group.descriptor())
      fail("bad-input", "function file is for " + desc + ", expected " + group.descriptor());
    std::vector<double> re = j.at("re").get<std::vector<double>>();
    std::vector<double> im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size() || static_cast<Index>(re.size()) != group.order())
      fail("bad-input", "function length does not match the group order");
    GroupFunction f;
    f.values = Eigen::VectorXcd(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) f.values[i] = {re[i], im[i]};
    return f;
  });
}

std::string spectral_report_to_json(const SpectralReport& report) {
  json j = {{"group", report.group},
            {"subset-size", report.subset_size},
            {"tolerance", report.tolerance},
            {"singular-values", to_vector(report.singular_values)},
            {"clusters", clusters_to_json(report.clusters)},
            {"lambda1", report.lambda1},
            {"lambda2", report.lambda2},
            {"sum-squares", report.sum_squares},
            {"sum-fourth", report.sum_fourth},
            {"zero-sum-values", to_vector(report.zero_sum_values)},
            {"zero-sum-clusters", clusters_to_json(report.zero_sum_clusters)},
            {"top-zero-sum-multiplicity", report.top_zero_sum_multiplicity}};
  if (report.zero_sum_vectors.size() > 0) {
    json cols = json::array();
    for (Eigen::Index c = 0; c < report.zero_sum_vectors.cols(); ++c)
      cols.push_back(to_vector(report.zero_sum_vectors.col(c)));
    j["zero-sum-vectors"] = cols;
  }
  return j.dump();
}

std::string character_table_to_json(const CharacterTable& table) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < table.table.rows(); ++r) {
    std::vector<double> row_re(table.table.cols()), row_im(table.table.cols());
    for (Eigen::Index c = 0; c < table.table.cols(); ++c) {
      row_re[c] = table.table(r, c).real();
      row_im[c] = table.table(r, c).imag();
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  json j = {{"group", table.group},
            {"classes", table.representatives},
            {"sizes", table.class_sizes},
            {"identity-class", table.identity_class},
            {"dims", table.dims},
            {"re", re},
            {"im", im},
            {"modulus", table.modulus},
            {"exponent", table.exponent}};
  return j.dump();
}

std::string bound_report_to_json(const BoundReport& report) {
  json clauses = json::array();
  for (const Clause& c : report.clauses) clauses.push_back(clause_to_json(c));
  json j = {{"statement", report.statement},
            {"group", report.group},
            {"inputs", report.inputs},
            {"clauses", clauses},
            {"pass", report.pass},
            {"runtime-seconds", report.runtime_seconds}};
  return j.dump();
}

std::string bound_report_csv_header() {
  return "statement,group,inputs,clause,applicable,clause-pass,bound,observed,pass,runtime-seconds";
}

std::string bound_report_to_csv(const BoundReport& report) {
  std::string out;
  for (const Clause& c : report.clauses) {
    if (!out.empty()) out += '\n';
    out += csv_field(report.statement) + ',' + csv_field(report.group) + ',' +
           csv_field(report.inputs) + ',' + csv_field(c.id) + ',' +
           (c.applicable ? "true" : "false") + ',' + (c.pass ? "true" : "false") + ',' +
           num(c.bound) + ',' + num(c.observed) + ',' + (report.pass ? "true" : "false") + ',' +
           num(report.runtime_seconds);
  }
  return out;
}

std::string solve_outcome_to_json(const SolveOutcome& outcome) {
  return outcome_to_json(outcome).dump();
}

std::string pairwise_outcome_to_json(const PairwiseOutcome& outcome) {
  json j = {{"outcome", outcome_to_json(outcome.outcome)},
            {"min-density", outcome.min_density},
            {"threshold", outcome.threshold}};
  if (outcome.condition_held) j["condition-held"] = *outcome.condition_held;
  return j.dump();
}

std::string search_result_to_json(const SearchResult& result) {
  json j = {{"method", result.method},
            {"size", result.size},
            {"elements", result.elements},
            {"verified", result.verified}};
  if (result.method == "exact") {
    j["optimal"] = result.optimal;
    j["nodes-explored"] = result.nodes_explored;
  }
  if (result.method == "coset" || result.method == "rep-cluster")
    j["candidate-pool"] = result.candidate_pool;
  if (result.method == "rep-cluster") j["cluster-count"] = result.cluster_count;
  return j.dump();
}

std::string constraint_system_to_json(const ConstraintSystem& sys) {
  json sets = json::object();
  json j = {{"group", sys.group().descriptor()},
            {"m", sys.variables()},
            {"pattern", pattern_name(sys.pattern())}};
  if (sys.pattern() == Pattern::custom_words) {
    json words = json::array();
    const auto& constraints = sys.constraints();
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      json word = json::array();
      for (const Symbol& s : constraints[i].word) word.push_back(symbol_name(s));
      words.push_back(word);
      sets[std::to_string(i + 1)] = constraints[i].set.elements();
    }
    j["words"] = words;
  } else {
    for (const Constraint& c : sys.constraints())
      sets[mask_key(mask_of_word(c.word))] = c.set.elements();
  }
  j["sets"] = sets;
  return j.dump();
}

ConstraintSystem constraint_system_from_json(const std::string& text, const GroupOptions& options) {
  return guarded([&] {
    json j = json::parse(text);
    FiniteGroup group = make_group(j.at("group").get<std::string>(), options);
    int m = j.at("m").get<int>();
    Pattern pattern = pattern_from_name(j.at("pattern").get<std::string>());
    const json& sets = j.at("sets");
    if (!sets.is_object()) fail("bad-input", "sets must be an object");

    if (pattern == Pattern::custom_words) {
      std::vector<Word> words;
      for (const json& word : j.at("words")) {
        Word w;
        for (const json& s : word) w.push_back(parse_symbol(s.get<std::string>()));
        words.push_back(w);
      }
      std::map<int, Subset> by_index;
      for (const auto& [key, value] : sets.items()) {
        if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
          fail("bad-input", "bad set key: " + key);
        int idx = std::stoi(key);
        if (idx < 1 || idx > static_cast<int>(words.size()))
          fail("bad-input", "bad set key: " + key);
        by_index.emplace(idx, subset_from_array(value, group.order()));
      }
      return ConstraintSystem::custom_words(group, m, words, by_index);
    }

    std::map<VarMask, Subset> by_mask;
    for (const auto& [key, value] : sets.items())
      by_mask.emplace(parse_mask_key(key, m), subset_from_array(value, group.order()));
    if (pattern == Pattern::forward_products)
      return ConstraintSystem::forward_products(group, m, by_mask);
    return ConstraintSystem::pairwise(group, m, by_mask, pattern == Pattern::pairs_inverse);
  });
}

}  // namespace qrg
