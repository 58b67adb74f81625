#pragma once

#include <span>
#include <string>
#include <vector>

#include "charec/embedding_table.hpp"

namespace charec {

// u.v / (|u||v|); throws std::domain_error when either norm is <= 1e-12.
double cosine_similarity(const Vec& u, const Vec& v);

// Ranks 1..n with ties replaced by the average of the tied positions.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks. Throws when either list has zero
// rank variance or fewer than two entries.
double spearman(std::span<const double> a, std::span<const double> b);

struct SimilarityPair {
  std::string word1, word2;
  double score = 0.0;
};

struct SimilarityDataset {
  std::string name;
  std::vector<SimilarityPair> pairs;
};

struct AnalogyQuestion {
  std::string a, b, c, d;
};

struct AnalogyDataset {
  std::string name;
  std::vector<AnalogyQuestion> questions;
};

struct SimilarityResult {
  std::string name;
  double rho = 0.0;
  size_t used = 0;
  size_t skipped = 0;
};

struct SimilarityReport {
  std::vector<SimilarityResult> per_dataset;
  double macro_average = 0.0;
};

// Spearman of model cosines against the annotated scores, one rho per
// dataset, unweighted mean across datasets. Pairs with a word missing from
// the table are skipped and counted; a dataset must keep >= 2 scorable
// pairs. Encoder-backed tables cover every word, so nothing is skipped
// there.
SimilarityReport eval_similarity(const EmbeddingTable& table,
                                 const std::vector<SimilarityDataset>& datasets);

inline constexpr double kThreeCosMulEps = 1e-3;

// 3CosMul: argmax over candidates x not in {a,b,c} of
// cos'(x,b) * cos'(x,c) / (cos'(x,a) + eps) with cos' = (cos+1)/2.
// Ties break to the lexicographically smallest word.
std::string answer_analogy(const EmbeddingTable& table, const std::string& a,
                           const std::string& b, const std::string& c);

struct AnalogyResult {
  size_t correct = 0;
  size_t attempted = 0;
  size_t skipped = 0;

  double accuracy() const {
    return attempted == 0 ? 0.0
                          : static_cast<double>(correct) /
                                static_cast<double>(attempted);
  }
};

// Questions whose a, b, c, or gold d is missing from the table are skipped
// and counted.
AnalogyResult eval_analogy(const EmbeddingTable& table,
                           const AnalogyDataset& dataset);

// Top-k by cosine similarity, query excluded, ties lexicographic.
std::vector<std::pair<std::string, double>> nearest_neighbors(
    const EmbeddingTable& table, const std::string& query, size_t k);

}  // namespace charec
