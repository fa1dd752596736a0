#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace mediasim {

/// Dense outlet x outlet score matrix. Row/column i belongs to labels()[i].
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * size() + j]; }

  // Sets both (i, j) and (j, i).
  void set_symmetric(std::size_t i, std::size_t j, double value);

  bool is_symmetric(double tolerance = 1e-12) const;

  bool operator==(const SimilarityMatrix&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

// Header row and column of handles, full matrix, 9 significant digits.
void write_matrix_csv(std::ostream& out, const SimilarityMatrix& m);
SimilarityMatrix read_matrix_csv(std::istream& in);

}  // namespace mediasim
