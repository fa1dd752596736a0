#include "mediasim/similarity_matrix.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "mediasim/csv.hpp"
#include "mediasim/error.hpp"

namespace mediasim {

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0) {}

void SimilarityMatrix::set_symmetric(std::size_t i, std::size_t j, double value) {
  (*this)(i, j) = value;
  (*this)(j, i) = value;
}

bool SimilarityMatrix::is_symmetric(double tolerance) const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tolerance) return false;
    }
  }
  return true;
}

void write_matrix_csv(std::ostream& out, const SimilarityMatrix& m) {
  std::vector<std::string> row{""};
  row.insert(row.end(), m.labels().begin(), m.labels().end());
  out << csv::join_row(row) << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    row.assign({m.labels()[i]});
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(csv::format_real(m(i, j)));
    out << csv::join_row(row) << '\n';
  }
}

SimilarityMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("similarity matrix: empty file");
  auto header = csv::split_row(line);
  if (header.empty() || !header.front().empty()) {
    throw ParseError("similarity matrix: header must start with an empty cell");
  }
  std::vector<std::string> labels(header.begin() + 1, header.end());
  SimilarityMatrix m(labels);
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (csv::trim(line).empty()) continue;
    auto cells = csv::split_row(line);
    if (i >= m.size()) throw ParseError("similarity matrix: too many rows");
    if (cells.size() != m.size() + 1) {
      throw ParseError("similarity matrix: row " + std::to_string(i + 1) + " has wrong width");
    }
    if (cells[0] != labels[i]) {
      throw ParseError("similarity matrix: row label '" + cells[0] + "' does not match column order");
    }
    for (std::size_t j = 0; j < m.size(); ++j) {
      try {
        m(i, j) = std::stod(cells[j + 1]);
      } catch (const std::exception&) {
        throw ParseError("similarity matrix: bad number '" + cells[j + 1] + "'");
      }
    }
    ++i;
  }
  if (i != m.size()) throw ParseError("similarity matrix: missing rows");
  return m;
}

}  // namespace mediasim
