// Copyright 2026 The Disambig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DISAMBIG_EVALUATION_H_
#define DISAMBIG_EVALUATION_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/corpus.h"
#include "disambig/search.h"

namespace disambig {

struct ClusterProvenance {
  std::string entity_id;
  std::vector<std::string> keywords;

  bool operator==(const ClusterProvenance &) const = default;
};

// Disjoint url clusters produced by the algorithm.
class Clustering {
 public:
  // Throws DataError if a url already belongs to another cluster or the id is
  // taken.
  void add_cluster(std::string id, std::set<std::string> urls,
                   ClusterProvenance provenance = {});

  const std::map<std::string, std::set<std::string>> &clusters() const {
    return clusters_;
  }
  const std::map<std::string, ClusterProvenance> &provenance() const {
    return provenance_;
  }

  std::optional<std::string_view> cluster_of(std::string_view url) const;

  // Urls that were outside the corpus document store and got dropped.
  std::size_t dropped() const { return dropped_; }
  void add_dropped(std::size_t n) { dropped_ += n; }

 private:
  std::map<std::string, std::set<std::string>> clusters_;
  std::map<std::string, ClusterProvenance> provenance_;
  std::map<std::string, std::string, std::less<>> index_;
  std::size_t dropped_ = 0;
};

enum class ClusterMode {
  // One clustering per keyword holding that keyword's outcome.
  kPerKeyword,
  // A single cluster with the union of all keyword outcomes.
  kUnion,
};

// Label used for the union cluster and its report row.
inline constexpr const char *kUnionLabel = "overlap";

// Builds clusterings from (name, keyword) outcomes. Per-keyword mode returns
// one single-cluster clustering per keyword in keyword order; union mode
// returns one clustering. An empty keyword list yields no clusterings.
// Throws DataError for an unknown entity or a keyword without an outcome.
std::vector<Clustering> build_clustering(
    const Corpus &corpus, std::string_view entity_id,
    std::span<const std::string> keywords,
    const std::map<std::string, QueryOutcome> &outcomes, ClusterMode mode);

// Fraction of the reference's gold set that shares its cluster. References
// outside every cluster never match, not even each other. Throws DataError
// when the url carries no gold label.
double rec_of_reference(std::string_view url, const GoldPartition &gold,
                        const Clustering &clustering);

// Fraction of the reference's cluster that shares its gold label. Unlabeled
// references never match. Throws DataError when the url is in no cluster.
double prec_of_reference(std::string_view url, const GoldPartition &gold,
                         const Clustering &clustering);

struct ReferenceScore {
  std::string url;
  double recall = 0.0;
  double precision = 0.0;
};

struct EvalRow {
  std::string label;
  double recall = 0.0;
  double precision = 0.0;
  double f_measure = 0.0;

  bool operator==(const EvalRow &) const = default;
};

// Harmonic mean; 0 when both are 0.
double f_measure(double recall, double precision);

// Mean recall, mean precision and their F-measure. Throws DataError when
// `scores` is empty.
EvalRow aggregate(std::span<const ReferenceScore> scores,
                  std::string label = {});

// Scores of the clustered, gold-labeled references (L_C) in url order.
std::vector<ReferenceScore> score_references(const GoldPartition &gold,
                                             const Clustering &clustering);

struct ClusterEvaluation {
  EvalRow row;
  std::size_t lc_size = 0;
};

// aggregate() over L_C. An empty L_C yields an all-zero row.
ClusterEvaluation evaluate_clustering(const GoldPartition &gold,
                                      const Clustering &clustering,
                                      std::string label);

struct EvalReport {
  std::vector<EvalRow> rows;
  std::optional<EvalRow> aggregate;
  // |L_C| of the union clustering.
  std::size_t lc_size = 0;
  std::vector<std::pair<std::string, std::size_t>> cluster_sizes;
  std::size_t dropped = 0;

  bool operator==(const EvalReport &) const = default;
};

enum class ReportMode { kPerKeyword, kUnion, kBoth };

// Builds the per-keyword rows and/or the union row for an entity.
EvalReport evaluate_keywords(const Corpus &corpus, std::string_view entity_id,
                             std::span<const std::string> keywords,
                             const std::map<std::string, QueryOutcome> &outcomes,
                             ReportMode mode);

// Two decimals, half-up.
double round2(double value);

enum class ReportFormat { kTable, kCsv, kJsonl };

ReportFormat parse_report_format(std::string_view name);
ReportMode parse_report_mode(std::string_view name);

void write_report(const EvalReport &report, ReportFormat format,
                  std::ostream &out);
// Parses the jsonl form back.
EvalReport read_report_jsonl(std::istream &in);

}  // namespace disambig

#endif  // DISAMBIG_EVALUATION_H_
