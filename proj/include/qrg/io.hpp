#pragma once

#include <string>

#include "qrg/bounds.hpp"
#include "qrg/chartab.hpp"
#include "qrg/group.hpp"
#include "qrg/productfree.hpp"
#include "qrg/setfun.hpp"
#include "qrg/solver.hpp"
#include "qrg/spectral.hpp"
#include "qrg/subset.hpp"

namespace qrg {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// {"group": descriptor, "elements": sorted indices}
std::string subset_to_json(const FiniteGroup& group, const Subset& a);
// validates that the file's descriptor matches the given group
Subset subset_from_json(const FiniteGroup& group, const std::string& text);

// {"group": descriptor, "re": [...], "im": [...]}
std::string function_to_json(const FiniteGroup& group, const GroupFunction& f);
GroupFunction function_from_json(const FiniteGroup& group, const std::string& text);

std::string spectral_report_to_json(const SpectralReport& report);
std::string character_table_to_json(const CharacterTable& table);

// one compact line per report
std::string bound_report_to_json(const BoundReport& report);
// one CSV row per clause, report columns repeated
std::string bound_report_csv_header();
std::string bound_report_to_csv(const BoundReport& report);

std::string solve_outcome_to_json(const SolveOutcome& outcome);
std::string pairwise_outcome_to_json(const PairwiseOutcome& outcome);
std::string search_result_to_json(const SearchResult& result);

// {"group", "m", "pattern", "sets": {"1": [...], "1,3": [...]}} with masks as
// comma-joined ascending 1-based indices; custom systems carry "words" as
// symbol arrays like ["x2", "x3^-1"] and key sets by word position
std::string constraint_system_to_json(const ConstraintSystem& sys);
ConstraintSystem constraint_system_from_json(const std::string& text,
                                             const GroupOptions& options = {});

}  // namespace qrg
