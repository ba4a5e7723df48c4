#include "docel/detect.hpp"

#include <algorithm>
#include <cctype>

#include "docel/errors.hpp"

namespace docel {
namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::set<std::string> DetectorConfig::default_reserved_names() {
  return {"resource", "org:resource", "org:role", "lifecycle:transition"};
}

bool is_reserved(const DetectorConfig& cfg, const std::string& attr) {
  std::string needle = lower(attr);
  for (const auto& r : cfg.reserved_names) {
    if (lower(r) == needle) return true;
  }
  return false;
}

bool check_cooccurrence(const OcelLog& log, const std::string& attr, const std::string& otype) {
  if (!log.event_attr_names.count(attr)) {
    throw Error(Errc::unknown_attribute, attr + " is not an event attribute of this log");
  }
  if (!log.object_types.count(otype)) {
    throw Error(Errc::unknown_object_type, otype + " is not an object type of this log");
  }
  bool occurs = false;
  for (const Event& ev : log.events) {
    if (!ev.attrs.count(attr)) continue;
    occurs = true;
    if (log.refs_of_type(ev, otype).size() != 1) return false;
  }
  return occurs;
}

bool check_changes(const OcelLog& log, const std::string& attr, const std::string& otype) {
  if (!check_cooccurrence(log, attr, otype)) {
    throw Error(Errc::precondition_violated,
                "check_changes requires the co-occurrence check to hold for " + attr + " and " + otype);
  }
  // Non-constant per instance iff some value differs from the instance's
  // first observed value.
  std::map<std::string, const AttributeValue*> first_seen;
  for (const Event& ev : log.events) {
    auto it = ev.attrs.find(attr);
    if (it == ev.attrs.end()) continue;
    std::string oid = log.refs_of_type(ev, otype)[0];
    auto seen = first_seen.find(oid);
    if (seen == first_seen.end()) {
      first_seen.emplace(std::move(oid), &it->second);
    } else if (!(*seen->second == it->second)) {
      return true;
    }
  }
  return false;
}

CandidateSet candidate_types(const OcelLog& log, const std::string& attr,
                             const DetectorConfig& cfg) {
  if (is_reserved(cfg, attr)) {
    throw Error(Errc::reserved_attribute, attr + " is reserved and cannot be a candidate");
  }
  CandidateSet cs;
  cs.attr = attr;
  for (const auto& otype : log.object_types) {
    TypeAudit audit;
    audit.cooccurrence = check_cooccurrence(log, attr, otype);
    if (audit.cooccurrence) {
      audit.changes = check_changes(log, attr, otype);
      if (audit.changes) cs.candidates.insert(otype);
    }
    cs.audit[otype] = audit;
  }
  return cs;
}

CandidateSet relation_disambiguate(const OcelLog& log, const CandidateSet& cs) {
  if (cs.candidates.size() < 2) return cs;
  CandidateSet out = cs;
  std::set<std::string> removed;
  for (const auto& t : cs.candidates) {
    bool remove = false;
    for (const auto& other : cs.candidates) {
      if (other == t) continue;
      // Witness: one instance of t seen with two distinct instances of
      // `other` anywhere in the log.
      std::map<std::string, std::string> partner;  // instance of t -> first partner
      for (const Event& ev : log.events) {
        auto t_refs = log.refs_of_type(ev, t);
        if (t_refs.empty()) continue;
        auto o_refs = log.refs_of_type(ev, other);
        if (o_refs.empty()) continue;
        for (const auto& ti : t_refs) {
          for (const auto& oi : o_refs) {
            auto it = partner.find(ti);
            if (it == partner.end()) {
              partner.emplace(ti, oi);
            } else if (it->second != oi) {
              remove = true;
            }
          }
          if (remove) break;
        }
        if (remove) break;
      }
      if (remove) break;
    }
    if (remove) {
      removed.insert(t);
      out.audit[t].removed_by_relation = true;
    }
  }
  if (removed.size() == cs.candidates.size()) {
    return out;  // mutual removal: keep the incoming set, audit tells the story
  }
  for (const auto& t : removed) out.candidates.erase(t);
  return out;
}

std::optional<std::string> name_disambiguate(const std::string& attr, const CandidateSet& cs,
                                             const DetectorConfig& cfg,
                                             std::map<std::string, double>* scores_out) {
  if (!cfg.name_matching_enabled) return std::nullopt;
  if (cs.candidates.size() < 2) return std::nullopt;
  std::map<std::string, double> scores;
  for (const auto& t : cs.candidates) scores[t] = cfg.similarity(attr, t);
  if (scores_out) *scores_out = scores;
  for (const auto& [t, score] : scores) {
    bool wins = true;
    for (const auto& [other, other_score] : scores) {
      if (other == t) continue;
      if (!(score > other_score + cfg.tau)) {
        wins = false;
        break;
      }
    }
    if (wins) return t;
  }
  return std::nullopt;
}

DetectionReport detect_with_audit(const OcelLog& log, const DetectorConfig& cfg) {
  DetectionReport report;
  for (const auto& attr : log.event_attr_names) {
    if (is_reserved(cfg, attr)) continue;
    CandidateSet cs = candidate_types(log, attr, cfg);
    if (cs.candidates.size() == 1) {
      report.matches.push_back({attr, *cs.candidates.begin(), MatchMethod::unique_candidate});
    } else if (cs.candidates.size() > 1) {
      cs = relation_disambiguate(log, cs);
      if (cs.candidates.size() == 1) {
        report.matches.push_back({attr, *cs.candidates.begin(), MatchMethod::relation_based});
      } else {
        std::map<std::string, double> scores;
        auto chosen = name_disambiguate(attr, cs, cfg, &scores);
        for (const auto& [t, score] : scores) cs.audit[t].similarity = score;
        if (chosen) report.matches.push_back({attr, *chosen, MatchMethod::name_based});
      }
    }
    report.audits.emplace(attr, std::move(cs));
  }
  return report;
}

std::vector<Match> detect_matches(const OcelLog& log, const DetectorConfig& cfg) {
  return detect_with_audit(log, cfg).matches;
}

}  // namespace docel
