#include "mediasim/simvocab.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"

namespace mediasim {

std::vector<OutletDocument> build_outlet_documents(const std::vector<TokenDoc>& docs,
                                                   const std::vector<std::string>& outlets) {
  std::vector<OutletDocument> out(outlets.size());
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < outlets.size(); ++i) {
    out[i].outlet = outlets[i];
    slot.emplace(outlets[i], i);
  }
  for (const auto& d : docs) {
    auto it = slot.find(d.outlet);
    if (it == slot.end()) continue;
    auto& counts = out[it->second].term_counts;
    for (const auto& tok : d.tokens) ++counts[tok];
  }
  for (const auto& doc : out) {
    if (doc.empty()) warn("vocabulary: outlet '" + doc.outlet + "' has an empty document");
  }
  return out;
}

double idf(std::size_t documents, std::size_t document_frequency, IdfVariant variant) {
  const auto n = static_cast<double>(documents);
  const auto df = static_cast<double>(document_frequency);
  switch (variant) {
    case IdfVariant::Smooth: return std::log((1.0 + n) / (1.0 + df)) + 1.0;
    case IdfVariant::Raw: return std::log(n / df);
  }
  return 0.0;
}

std::vector<TfIdfVector> tfidf(const std::vector<OutletDocument>& docs, IdfVariant variant) {
  if (docs.empty()) throw ContractError("tfidf: needs at least one document");
  std::map<std::string, std::size_t> df;
  for (const auto& d : docs) {
    for (const auto& [term, _] : d.term_counts) ++df[term];
  }
  std::vector<TfIdfVector> out;
  out.reserve(docs.size());
  for (const auto& d : docs) {
    TfIdfVector v{d.outlet, {}};
    for (const auto& [term, count] : d.term_counts) {
      v.weights.emplace(term, static_cast<double>(count) * idf(docs.size(), df[term], variant));
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

double norm(const TfIdfVector& v) {
  double s = 0.0;
  for (const auto& [_, w] : v.weights) s += w * w;
  return std::sqrt(s);
}

// Sparse vector over interned term ids, sorted by id.
struct IndexedVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  double norm = 0.0;
};

double dot(const IndexedVector& a, const IndexedVector& b) {
  double s = 0.0;
  auto i = a.entries.begin();
  auto j = b.entries.begin();
  while (i != a.entries.end() && j != b.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return s;
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double cosine(const TfIdfVector& u, const TfIdfVector& v) {
  const double nu = norm(u), nv = norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  double d = 0.0;
  auto i = u.weights.begin();
  auto j = v.weights.begin();
  while (i != u.weights.end() && j != v.weights.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      d += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return clamp_unit(d / (nu * nv));
}

SimilarityMatrix vocabulary_similarity(const std::vector<TokenDoc>& docs,
                                       const std::vector<std::string>& outlets, IdfVariant variant) {
  SimilarityMatrix m(outlets);
  if (outlets.empty()) return m;
  const auto vectors = tfidf(build_outlet_documents(docs, outlets), variant);

  // Shared term dictionary; pairwise merges run on integer ids.
  std::map<std::string, std::uint32_t> ids;
  for (const auto& v : vectors) {
    for (const auto& [term, _] : v.weights) ids.emplace(term, 0);
  }
  std::uint32_t next = 0;
  for (auto& [_, id] : ids) id = next++;

  std::vector<IndexedVector> indexed(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (const auto& [term, w] : vectors[i].weights) indexed[i].entries.emplace_back(ids[term], w);
    indexed[i].norm = norm(vectors[i]);
  }

  for (std::size_t i = 0; i < indexed.size(); ++i) {
    m(i, i) = indexed[i].norm > 0.0 ? 1.0 : 0.0;
    for (std::size_t j = i + 1; j < indexed.size(); ++j) {
      double s = 0.0;
      if (indexed[i].norm > 0.0 && indexed[j].norm > 0.0) {
        s = clamp_unit(dot(indexed[i], indexed[j]) / (indexed[i].norm * indexed[j].norm));
      }
      m.set_symmetric(i, j, s);
    }
  }
  return m;
}

}  // namespace mediasim
