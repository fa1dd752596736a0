#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mediasim/corpus.hpp"
#include "mediasim/similarity_matrix.hpp"

namespace mediasim {

/// Bag of words over every tweet an outlet posted.
struct OutletDocument {
  std::string outlet;
  std::map<std::string, std::int64_t> term_counts;

  bool empty() const { return term_counts.empty(); }
};

enum class IdfVariant {
  Smooth,  // ln((1 + N) / (1 + df)) + 1
  Raw,     // ln(N / df)
};

struct TfIdfVector {
  std::string outlet;
  std::map<std::string, double> weights;
};

/// One document per outlet in `outlets` (which fixes the output order).
/// Outlets with no surviving tokens get an empty document and a warning.
std::vector<OutletDocument> build_outlet_documents(const std::vector<TokenDoc>& docs,
                                                   const std::vector<std::string>& outlets);

double idf(std::size_t documents, std::size_t document_frequency, IdfVariant variant);

std::vector<TfIdfVector> tfidf(const std::vector<OutletDocument>& docs,
                               IdfVariant variant = IdfVariant::Smooth);

/// Cosine of two sparse vectors; 0 when either has zero norm.
double cosine(const TfIdfVector& u, const TfIdfVector& v);

SimilarityMatrix vocabulary_similarity(const std::vector<TokenDoc>& docs,
                                       const std::vector<std::string>& outlets,
                                       IdfVariant variant = IdfVariant::Smooth);

}  // namespace mediasim
