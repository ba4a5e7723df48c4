#pragma once

#include <functional>
#include <string>
#include <vector>

namespace docel {

// Scores how alike an attribute name and an object type name are, in [0, 1].
// Providers must be deterministic for a given input pair.
using SimilarityFn = std::function<double(const std::string&, const std::string&)>;

// Splits on non-alphanumeric characters and lowercase-to-uppercase camelCase
// boundaries, lowercasing every token. "CustomerAddress" and
// "customer_address" tokenize identically.
std::vector<std::string> tokenize_name(const std::string& name);

// Built-in provider: cosine similarity of character-trigram frequency
// vectors over the space-joined token form. Strings shorter than three
// characters contribute themselves as a single gram.
double lexical_similarity(const std::string& a, const std::string& b);

// Provider backed by a JSON file mapping names to equal-length numeric
// vectors. Lookup is exact on the raw name; a missing name or malformed
// vector raises Error(similarity_provider_failure). Cosine results are
// clamped to [0, 1].
SimilarityFn load_embedding_similarity(const std::string& path);

}  // namespace docel
