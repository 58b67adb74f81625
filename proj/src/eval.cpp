#include "charec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "charec/metrics.hpp"

namespace charec {

double cosine_similarity(const Vec& u, const Vec& v) {
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu <= kNormEps || nv <= kNormEps) {
    throw std::domain_error("cosine_similarity: zero-norm input");
  }
  return dot(u, v) / (nu * nv);
}

std::vector<double> average_ranks(std::span<const double> values) {
  const size_t n = values.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share the averaged 1-based rank
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw std::domain_error("spearman: zero rank variance");
  }
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("spearman: length mismatch");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("spearman: need at least two observations");
  }
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  return pearson(ra, rb);
}

SimilarityReport eval_similarity(
    const EmbeddingTable& table,
    const std::vector<SimilarityDataset>& datasets) {
  if (datasets.empty()) {
    throw std::invalid_argument("eval_similarity: no datasets");
  }
  SimilarityReport report;
  double sum = 0.0;
  for (const auto& dataset : datasets) {
    std::vector<double> human, model;
    size_t skipped = 0;
    for (const auto& pair : dataset.pairs) {
      const Vec* v1 = table.find(pair.word1);
      const Vec* v2 = table.find(pair.word2);
      if (v1 == nullptr || v2 == nullptr) {
        ++skipped;
        continue;
      }
      human.push_back(pair.score);
      model.push_back(cosine_similarity(*v1, *v2));
    }
    if (human.size() < 2) {
      throw std::domain_error("eval_similarity: dataset '" + dataset.name +
                              "' has fewer than 2 scorable pairs");
    }
    SimilarityResult result;
    result.name = dataset.name;
    result.rho = spearman(human, model);
    result.used = human.size();
    result.skipped = skipped;
    sum += result.rho;
    report.per_dataset.push_back(std::move(result));
  }
  report.macro_average = sum / static_cast<double>(datasets.size());
  return report;
}

namespace {

double shifted_cosine(const Vec& u, const Vec& v) {
  return (cosine_similarity(u, v) + 1.0) / 2.0;
}

}  // namespace

std::string answer_analogy(const EmbeddingTable& table, const std::string& a,
                           const std::string& b, const std::string& c) {
  const Vec* va = table.find(a);
  const Vec* vb = table.find(b);
  const Vec* vc = table.find(c);
  if (va == nullptr || vb == nullptr || vc == nullptr) {
    throw std::out_of_range("answer_analogy: query word missing from table");
  }
  std::string best;
  double best_score = -1.0;
  for (const auto& word : table.words()) {
    if (word == a || word == b || word == c) continue;
    const Vec& x = table.at(word);
    const double score = shifted_cosine(x, *vb) * shifted_cosine(x, *vc) /
                         (shifted_cosine(x, *va) + kThreeCosMulEps);
    if (score > best_score || (score == best_score && word < best)) {
      best_score = score;
      best = word;
    }
  }
  if (best.empty()) {
    throw std::domain_error("answer_analogy: empty candidate set");
  }
  return best;
}

AnalogyResult eval_analogy(const EmbeddingTable& table,
                           const AnalogyDataset& dataset) {
  AnalogyResult result;
  for (const auto& q : dataset.questions) {
    if (!table.contains(q.a) || !table.contains(q.b) || !table.contains(q.c) ||
        !table.contains(q.d)) {
      ++result.skipped;
      continue;
    }
    ++result.attempted;
    if (answer_analogy(table, q.a, q.b, q.c) == q.d) ++result.correct;
  }
  return result;
}

std::vector<std::pair<std::string, double>> nearest_neighbors(
    const EmbeddingTable& table, const std::string& query, size_t k) {
  const Vec* qv = table.find(query);
  if (qv == nullptr) {
    throw std::out_of_range("nearest_neighbors: query '" + query +
                            "' missing from table");
  }
  if (k == 0) {
    throw std::invalid_argument("nearest_neighbors: k must be >= 1");
  }
  std::vector<std::pair<std::string, double>> scored;
  scored.reserve(table.size());
  for (const auto& word : table.words()) {
    if (word == query) continue;
    scored.emplace_back(word, cosine_similarity(table.at(word), *qv));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace charec
