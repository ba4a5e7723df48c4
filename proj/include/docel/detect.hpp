#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "docel/model.hpp"
#include "docel/similarity.hpp"

namespace docel {

struct TypeAudit {
  bool cooccurrence = false;
  bool changes = false;
  bool removed_by_relation = false;
  std::optional<double> similarity;
};

// Candidate object types for one attribute, with the per-type evidence that
// put each type in or out.
struct CandidateSet {
  std::string attr;
  std::set<std::string> candidates;
  std::map<std::string, TypeAudit> audit;
};

struct DetectorConfig {
  double tau = 0.1;
  // Compared case-insensitively against attribute names; replace to override.
  std::set<std::string> reserved_names = default_reserved_names();
  SimilarityFn similarity = lexical_similarity;
  bool name_matching_enabled = true;

  static std::set<std::string> default_reserved_names();
};

bool is_reserved(const DetectorConfig& cfg, const std::string& attr);

// True iff every event carrying a value for attr references exactly one
// instance of otype. An attribute that never occurs passes for no type.
bool check_cooccurrence(const OcelLog& log, const std::string& attr, const std::string& otype);

// True iff some instance of otype takes two different values for attr
// across its events. Requires check_cooccurrence to hold.
bool check_changes(const OcelLog& log, const std::string& attr, const std::string& otype);

// Both checks for every object type; candidates are the types passing both.
CandidateSet candidate_types(const OcelLog& log, const std::string& attr,
                             const DetectorConfig& cfg);

// Removes every candidate type that stands in a 1:N relation to another
// candidate: some instance of it co-occurs, across the whole log, with two
// distinct instances of the other. Removal is judged against the incoming
// set; if it would remove everything, the incoming set is returned so
// name-based selection can still decide.
CandidateSet relation_disambiguate(const OcelLog& log, const CandidateSet& cs);

// Picks the candidate whose name scores higher than every other candidate's
// by more than tau; no such candidate, or name matching disabled, yields
// nothing. Scores are reported via scores_out when provided.
std::optional<std::string> name_disambiguate(const std::string& attr, const CandidateSet& cs,
                                             const DetectorConfig& cfg,
                                             std::map<std::string, double>* scores_out = nullptr);

// The full per-attribute pipeline over all non-reserved event attributes,
// in ascending attribute-name order.
std::vector<Match> detect_matches(const OcelLog& log, const DetectorConfig& cfg);

struct DetectionReport {
  std::vector<Match> matches;
  std::map<std::string, CandidateSet> audits;  // per non-reserved attribute
};

DetectionReport detect_with_audit(const OcelLog& log, const DetectorConfig& cfg);

}  // namespace docel
