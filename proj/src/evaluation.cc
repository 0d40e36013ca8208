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

#include "disambig/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>

#include "disambig/error.h"
#include "disambig/url.h"
#include "json.hpp"

namespace disambig {
namespace {

using nlohmann::json;

std::size_t shared(const std::set<std::string> &a,
                   const std::set<std::string> &b) {
  const auto &small = a.size() <= b.size() ? a : b;
  const auto &large = a.size() <= b.size() ? b : a;
  return static_cast<std::size_t>(std::count_if(
      small.begin(), small.end(),
      [&](const std::string &url) { return large.contains(url); }));
}

std::string fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", round2(value));
  return buf;
}

json row_json(const char *kind, const EvalRow &row) {
  return {{"kind", kind},
          {"label", row.label},
          {"recall", row.recall},
          {"precision", row.precision},
          {"f_measure", row.f_measure}};
}

EvalRow row_from_json(const json &doc) {
  return {doc.at("label").get<std::string>(), doc.at("recall").get<double>(),
          doc.at("precision").get<double>(), doc.at("f_measure").get<double>()};
}

}  // namespace

void Clustering::add_cluster(std::string id, std::set<std::string> urls,
                             ClusterProvenance provenance) {
  if (clusters_.contains(id)) {
    throw DataError("duplicate cluster id '" + id + "'");
  }
  for (const auto &url : urls) {
    if (auto it = index_.find(url); it != index_.end()) {
      throw DataError("url " + url + " is in clusters '" + it->second +
                      "' and '" + id + "'");
    }
  }
  for (const auto &url : urls) index_.emplace(url, id);
  provenance_.emplace(id, std::move(provenance));
  clusters_.emplace(std::move(id), std::move(urls));
}

std::optional<std::string_view> Clustering::cluster_of(
    std::string_view url) const {
  auto it = index_.find(url);
  if (it == index_.end()) return std::nullopt;
  return std::string_view(it->second);
}

std::vector<Clustering> build_clustering(
    const Corpus &corpus, std::string_view entity_id,
    std::span<const std::string> keywords,
    const std::map<std::string, QueryOutcome> &outcomes, ClusterMode mode) {
  corpus.entity(entity_id);

  std::vector<Clustering> out;
  if (keywords.empty()) return out;

  // Known urls of one outcome; anything else is counted as dropped.
  auto known_urls = [&](const std::string &keyword, std::size_t &dropped) {
    auto it = outcomes.find(keyword);
    if (it == outcomes.end()) {
      throw DataError("no outcome for keyword '" + keyword + "'");
    }
    std::set<std::string> urls;
    for (const auto &doc : it->second.results) {
      std::string url = normalize_url(doc.url);
      if (corpus.find_document(url) == nullptr) {
        ++dropped;
      } else {
        urls.insert(std::move(url));
      }
    }
    return urls;
  };

  if (mode == ClusterMode::kPerKeyword) {
    for (const auto &keyword : keywords) {
      std::size_t dropped = 0;
      auto urls = known_urls(keyword, dropped);
      Clustering c;
      c.add_cluster(keyword, std::move(urls),
                    {std::string(entity_id), {keyword}});
      c.add_dropped(dropped);
      out.push_back(std::move(c));
    }
    return out;
  }

  std::set<std::string> all;
  std::set<std::string> dropped_urls;
  for (const auto &keyword : keywords) {
    std::size_t ignored = 0;
    auto urls = known_urls(keyword, ignored);
    all.insert(urls.begin(), urls.end());
    for (const auto &doc : outcomes.at(keyword).results) {
      std::string url = normalize_url(doc.url);
      if (corpus.find_document(url) == nullptr) dropped_urls.insert(url);
    }
  }
  Clustering c;
  c.add_cluster(kUnionLabel, std::move(all),
                {std::string(entity_id),
                 std::vector<std::string>(keywords.begin(), keywords.end())});
  c.add_dropped(dropped_urls.size());
  out.push_back(std::move(c));
  return out;
}

double rec_of_reference(std::string_view url, const GoldPartition &gold,
                        const Clustering &clustering) {
  auto label = gold.label_of(url);
  if (!label) {
    throw DataError("reference " + std::string(url) + " has no gold label");
  }
  const auto &partition = gold.members(*label);
  auto cluster = clustering.cluster_of(url);
  if (!cluster) return 0.0;
  const auto &members = clustering.clusters().at(std::string(*cluster));
  return static_cast<double>(shared(partition, members)) /
         static_cast<double>(partition.size());
}

double prec_of_reference(std::string_view url, const GoldPartition &gold,
                         const Clustering &clustering) {
  auto cluster = clustering.cluster_of(url);
  if (!cluster) {
    throw DataError("reference " + std::string(url) + " is in no cluster");
  }
  const auto &members = clustering.clusters().at(std::string(*cluster));
  auto label = gold.label_of(url);
  if (!label) return 0.0;
  return static_cast<double>(shared(gold.members(*label), members)) /
         static_cast<double>(members.size());
}

double f_measure(double recall, double precision) {
  if (recall + precision == 0.0) return 0.0;
  return 2.0 * recall * precision / (recall + precision);
}

EvalRow aggregate(std::span<const ReferenceScore> scores, std::string label) {
  if (scores.empty()) {
    throw DataError("cannot aggregate an empty set of clustered references");
  }
  double rec = 0.0;
  double prec = 0.0;
  for (const auto &s : scores) {
    rec += s.recall;
    prec += s.precision;
  }
  const auto n = static_cast<double>(scores.size());
  EvalRow row{std::move(label), rec / n, prec / n, 0.0};
  row.f_measure = f_measure(row.recall, row.precision);
  return row;
}

std::vector<ReferenceScore> score_references(const GoldPartition &gold,
                                             const Clustering &clustering) {
  std::set<std::string> clustered;
  for (const auto &[id, urls] : clustering.clusters()) {
    for (const auto &url : urls) {
      if (gold.label_of(url)) clustered.insert(url);
    }
  }
  std::vector<ReferenceScore> out;
  out.reserve(clustered.size());
  for (const auto &url : clustered) {
    out.push_back({url, rec_of_reference(url, gold, clustering),
                   prec_of_reference(url, gold, clustering)});
  }
  return out;
}

ClusterEvaluation evaluate_clustering(const GoldPartition &gold,
                                      const Clustering &clustering,
                                      std::string label) {
  auto scores = score_references(gold, clustering);
  if (scores.empty()) return {EvalRow{std::move(label)}, 0};
  return {aggregate(scores, std::move(label)), scores.size()};
}

EvalReport evaluate_keywords(const Corpus &corpus, std::string_view entity_id,
                             std::span<const std::string> keywords,
                             const std::map<std::string, QueryOutcome> &outcomes,
                             ReportMode mode) {
  EvalReport report;
  if (mode != ReportMode::kUnion) {
    auto per_keyword = build_clustering(corpus, entity_id, keywords, outcomes,
                                        ClusterMode::kPerKeyword);
    for (std::size_t i = 0; i < per_keyword.size(); ++i) {
      const auto &c = per_keyword[i];
      report.rows.push_back(
          evaluate_clustering(corpus.gold(), c, keywords[i]).row);
      report.cluster_sizes.emplace_back(keywords[i],
                                        c.clusters().begin()->second.size());
      report.dropped += c.dropped();
    }
  }
  if (mode != ReportMode::kPerKeyword) {
    auto unions = build_clustering(corpus, entity_id, keywords, outcomes,
                                   ClusterMode::kUnion);
    if (!unions.empty()) {
      const auto &c = unions.front();
      auto eval = evaluate_clustering(corpus.gold(), c, kUnionLabel);
      report.aggregate = eval.row;
      report.lc_size = eval.lc_size;
      report.cluster_sizes.emplace_back(kUnionLabel,
                                        c.clusters().begin()->second.size());
      if (mode == ReportMode::kUnion) report.dropped = c.dropped();
    }
  }
  return report;
}

double round2(double value) {
  return std::floor(value * 100.0 + 0.5 + 1e-9) / 100.0;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::kTable;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "jsonl") return ReportFormat::kJsonl;
  throw UsageError("unknown report format '" + std::string(name) + "'");
}

ReportMode parse_report_mode(std::string_view name) {
  if (name == "per-keyword") return ReportMode::kPerKeyword;
  if (name == "union") return ReportMode::kUnion;
  if (name == "both") return ReportMode::kBoth;
  throw UsageError("unknown evaluation mode '" + std::string(name) + "'");
}

void write_report(const EvalReport &report, ReportFormat format,
                  std::ostream &out) {
  switch (format) {
    case ReportFormat::kTable: {
      std::size_t width = 8;
      for (const auto &row : report.rows) width = std::max(width, row.label.size());
      width = std::max(width, std::string("Overlap").size());
      auto line = [&](const std::string &label, const std::string &r,
                      const std::string &p, const std::string &f) {
        out << std::left << std::setw(static_cast<int>(width)) << label
            << std::right << std::setw(8) << r << std::setw(11) << p
            << std::setw(11) << f << '\n';
      };
      line("Keywords", "Recall", "Precision", "F-measure");
      for (const auto &row : report.rows) {
        line(row.label, fixed2(row.recall), fixed2(row.precision),
             fixed2(row.f_measure));
      }
      if (report.aggregate) {
        const auto &a = *report.aggregate;
        line("Overlap", fixed2(a.recall), fixed2(a.precision),
             fixed2(a.f_measure));
      }
      break;
    }
    case ReportFormat::kCsv:
      out << "label,recall,precision,f_measure\n";
      for (const auto &row : report.rows) {
        out << row.label << ',' << fixed2(row.recall) << ','
            << fixed2(row.precision) << ',' << fixed2(row.f_measure) << '\n';
      }
      if (report.aggregate) {
        const auto &a = *report.aggregate;
        out << a.label << ',' << fixed2(a.recall) << ',' << fixed2(a.precision)
            << ',' << fixed2(a.f_measure) << '\n';
      }
      break;
    case ReportFormat::kJsonl: {
      for (const auto &row : report.rows) out << row_json("row", row).dump() << '\n';
      if (report.aggregate) {
        out << row_json("aggregate", *report.aggregate).dump() << '\n';
      }
      json sizes = json::array();
      for (const auto &[label, size] : report.cluster_sizes) {
        sizes.push_back({{"label", label}, {"size", size}});
      }
      json summary = {{"kind", "summary"},
                      {"lc_size", report.lc_size},
                      {"dropped", report.dropped},
                      {"cluster_sizes", std::move(sizes)}};
      out << summary.dump() << '\n';
      break;
    }
  }
}

EvalReport read_report_jsonl(std::istream &in) {
  EvalReport report;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      json doc = json::parse(line);
      std::string kind = doc.at("kind").get<std::string>();
      if (kind == "row") {
        report.rows.push_back(row_from_json(doc));
      } else if (kind == "aggregate") {
        report.aggregate = row_from_json(doc);
      } else if (kind == "summary") {
        report.lc_size = doc.at("lc_size").get<std::size_t>();
        report.dropped = doc.at("dropped").get<std::size_t>();
        for (const auto &s : doc.at("cluster_sizes")) {
          report.cluster_sizes.emplace_back(s.at("label").get<std::string>(),
                                            s.at("size").get<std::size_t>());
        }
      } else {
        throw DataError("report line " + std::to_string(number) +
                        ": unknown kind '" + kind + "'");
      }
    } catch (const json::exception &e) {
      throw DataError("report line " + std::to_string(number) + ": " +
                      e.what());
    }
  }
  return report;
}

}  // namespace disambig
