#include "docel/similarity.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>

#include <json.hpp>

#include "docel/csv.hpp"
#include "docel/errors.hpp"

namespace docel {
namespace {

std::map<std::string, int> trigram_counts(const std::string& joined) {
  std::map<std::string, int> grams;
  if (joined.empty()) return grams;
  if (joined.size() < 3) {
    grams[joined] = 1;
    return grams;
  }
  for (size_t i = 0; i + 3 <= joined.size(); ++i) {
    ++grams[joined.substr(i, 3)];
  }
  return grams;
}

double cosine(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [g, c] : a) {
    na += static_cast<double>(c) * c;
    auto it = b.find(g);
    if (it != b.end()) dot += static_cast<double>(c) * it->second;
  }
  for (const auto& [g, c] : b) nb += static_cast<double>(c) * c;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

std::vector<std::string> tokenize_name(const std::string& name) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  char prev = '\0';
  for (char c : name) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (!std::isalnum(uc)) {
      flush();
      prev = c;
      continue;
    }
    if (std::isupper(uc) && std::islower(static_cast<unsigned char>(prev))) flush();
    current += static_cast<char>(std::tolower(uc));
    prev = c;
  }
  flush();
  return tokens;
}

double lexical_similarity(const std::string& a, const std::string& b) {
  auto join = [](const std::vector<std::string>& toks) {
    std::string out;
    for (size_t i = 0; i < toks.size(); ++i) {
      if (i) out += ' ';
      out += toks[i];
    }
    return out;
  };
  return cosine(trigram_counts(join(tokenize_name(a))),
                trigram_counts(join(tokenize_name(b))));
}

SimilarityFn load_embedding_similarity(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::similarity_provider_failure,
                "embeddings file is not valid JSON: " + path);
  }
  if (!doc.is_object()) {
    throw Error(Errc::similarity_provider_failure,
                "embeddings file must be a JSON object: " + path);
  }
  auto table = std::make_shared<std::map<std::string, std::vector<double>>>();
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!it.value().is_array() || it.value().empty()) {
      throw Error(Errc::similarity_provider_failure,
                  "embedding for '" + it.key() + "' must be a non-empty array");
    }
    std::vector<double> vec;
    for (const auto& x : it.value()) {
      if (!x.is_number()) {
        throw Error(Errc::similarity_provider_failure,
                    "embedding for '" + it.key() + "' has a non-numeric entry");
      }
      vec.push_back(x.get<double>());
    }
    (*table)[it.key()] = std::move(vec);
  }
  return [table](const std::string& a, const std::string& b) -> double {
    auto ia = table->find(a);
    auto ib = table->find(b);
    if (ia == table->end()) {
      throw Error(Errc::similarity_provider_failure, "no embedding for name: " + a);
    }
    if (ib == table->end()) {
      throw Error(Errc::similarity_provider_failure, "no embedding for name: " + b);
    }
    const auto& va = ia->second;
    const auto& vb = ib->second;
    if (va.size() != vb.size()) {
      throw Error(Errc::similarity_provider_failure,
                  "embedding dimensions differ for '" + a + "' and '" + b + "'");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < va.size(); ++i) {
      dot += va[i] * vb[i];
      na += va[i] * va[i];
      nb += vb[i] * vb[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    double cos = dot / (std::sqrt(na) * std::sqrt(nb));
    if (cos < 0.0) return 0.0;
    if (cos > 1.0) return 1.0;
    return cos;
  };
}

}  // namespace docel
