// Copyright 2026 The Refinery Authors. All Rights Reserved.
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

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "refinery/error.hpp"
#include "refinery/pipeline.hpp"

namespace refinery {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Row {
  const StageStats* stats;
  bool tokens;
  double step;
  double cumulative;
};

// Document rates until the first stage that carries token counts, token rates
// from there on, continuing the cumulative product.
std::vector<Row> Rows(std::span<const StageStats> stats) {
  const std::vector<KeptRate> doc_rates = KeptRates(stats);
  std::vector<Row> rows;
  double cumulative = 1.0;
  bool tokens = false;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const StageStats& s = stats[i];
    tokens = tokens || (s.tokens_in.has_value() && s.tokens_out.has_value());
    if (tokens && s.tokens_in && s.tokens_out) {
      const double step =
          *s.tokens_in == 0 ? 0.0 : static_cast<double>(*s.tokens_out) / static_cast<double>(*s.tokens_in);
      cumulative *= step;
      rows.push_back({&s, true, step, cumulative});
    } else {
      cumulative = doc_rates[i].cumulative_kept_rate;
      rows.push_back({&s, false, doc_rates[i].step_kept_rate, cumulative});
    }
  }
  return rows;
}

double Round4(double rate) {
  if (rate == 0.0 || !std::isfinite(rate)) return rate;
  return std::stod(FormatRate(rate));
}

std::string Table(const PartResult* result, std::span<const StageStats> stats) {
  const std::vector<Row> rows = Rows(stats);
  std::ostringstream out;
  out << std::left << std::setw(18) << "stage" << std::setw(8) << "unit" << std::right << std::setw(10) << "in"
      << std::setw(10) << "out" << std::setw(10) << "removed" << std::setw(10) << "malformed" << std::setw(12)
      << "step kept" << std::setw(12) << "cum. kept" << '\n';
  for (const Row& row : rows) {
    const StageStats& s = *row.stats;
    const std::uint64_t in = row.tokens ? *s.tokens_in : s.docs_in;
    const std::uint64_t out_n = row.tokens ? *s.tokens_out : s.docs_out;
    out << std::left << std::setw(18) << s.stage << std::setw(8) << (row.tokens ? "tokens" : "docs") << std::right
        << std::setw(10) << in << std::setw(10) << out_n << std::setw(10) << (in - out_n) << std::setw(10)
        << s.malformed << std::setw(12) << FormatRate(row.step) << std::setw(12) << FormatRate(row.cumulative) << '\n';
  }
  if (result != nullptr) {
    out << "\ningested " << result->ingested << ", written " << result->records_written << ", malformed "
        << result->malformed << " (tokenizer: " << result->tokenizer << ")\n";
    if (!result->rejections.empty()) {
      out << "rejections:\n";
      for (const auto& [reason, count] : result->rejections) {
        out << "  " << std::left << std::setw(22) << RejectReasonName(reason) << std::right << count << '\n';
      }
    }
    if (!result->skipped.empty()) {
      out << "skipped WARC records (all parts):\n";
      for (const auto& [what, count] : result->skipped) {
        out << "  " << std::left << std::setw(22) << what << std::right << count << '\n';
      }
    }
  }
  return out.str();
}

ordered_json StagesJson(std::span<const StageStats> stats) {
  ordered_json arr = ordered_json::array();
  for (const Row& row : Rows(stats)) {
    const StageStats& s = *row.stats;
    ordered_json j;
    j["stage"] = s.stage;
    j["unit"] = row.tokens ? "tokens" : "docs";
    j["docs_in"] = s.docs_in;
    j["docs_out"] = s.docs_out;
    if (s.tokens_in) j["tokens_in"] = *s.tokens_in;
    if (s.tokens_out) j["tokens_out"] = *s.tokens_out;
    j["bytes_in"] = s.bytes_in;
    j["bytes_out"] = s.bytes_out;
    j["malformed"] = s.malformed;
    j["step_kept_rate"] = Round4(row.step);
    j["cumulative_kept_rate"] = Round4(row.cumulative);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

std::string FormatRate(double rate) {
  if (!std::isfinite(rate)) return "nan";
  if (rate == 0.0) return "0.000";
  const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(rate))));
  const int decimals = std::max(0, 3 - magnitude);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rate);
  return buf;
}

std::string EmitReport(std::span<const StageStats> stats, ReportFormat format) {
  if (format == ReportFormat::kTable) return Table(nullptr, stats);
  ordered_json j;
  j["stages"] = StagesJson(stats);
  return j.dump(2) + "\n";
}

std::string EmitReport(const PartResult& result, ReportFormat format) {
  if (format == ReportFormat::kTable) return Table(&result, result.stats);
  ordered_json j;
  j["tokenizer"] = result.tokenizer;
  j["ingested"] = result.ingested;
  j["records_written"] = result.records_written;
  j["malformed"] = result.malformed;
  j["stages"] = StagesJson(result.stats);
  ordered_json rejections = ordered_json::object();
  for (const auto& [reason, count] : result.rejections) rejections[std::string(RejectReasonName(reason))] = count;
  j["rejections"] = std::move(rejections);
  ordered_json skipped = ordered_json::object();
  for (const auto& [what, count] : result.skipped) skipped[what] = count;
  j["skipped"] = std::move(skipped);
  ordered_json errors = ordered_json::array();
  for (const DocumentError& e : result.errors) errors.push_back({{"id", e.doc_id}, {"stage", e.stage}, {"message", e.message}});
  j["errors"] = std::move(errors);
  return j.dump(2) + "\n";
}

PartResult ParseReport(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    PartResult result;
    result.tokenizer = j.value("tokenizer", result.tokenizer);
    result.ingested = j.value("ingested", std::uint64_t{0});
    result.records_written = j.value("records_written", std::uint64_t{0});
    result.malformed = j.value("malformed", std::uint64_t{0});
    for (const auto& s : j.at("stages")) {
      StageStats st;
      st.stage = s.at("stage").get<std::string>();
      st.docs_in = s.at("docs_in").get<std::uint64_t>();
      st.docs_out = s.at("docs_out").get<std::uint64_t>();
      if (s.contains("tokens_in")) st.tokens_in = s.at("tokens_in").get<std::uint64_t>();
      if (s.contains("tokens_out")) st.tokens_out = s.at("tokens_out").get<std::uint64_t>();
      st.bytes_in = s.value("bytes_in", std::uint64_t{0});
      st.bytes_out = s.value("bytes_out", std::uint64_t{0});
      st.malformed = s.value("malformed", std::uint64_t{0});
      result.stats.push_back(std::move(st));
    }
    if (j.contains("rejections")) {
      for (auto it = j["rejections"].begin(); it != j["rejections"].end(); ++it) {
        const auto reason = ParseRejectReason(it.key());
        if (!reason) throw Error(ErrorCode::kMalformedRecord, "unknown rejection reason '" + it.key() + "'");
        result.rejections[*reason] = it.value().get<std::uint64_t>();
      }
    }
    if (j.contains("skipped")) {
      for (auto it = j["skipped"].begin(); it != j["skipped"].end(); ++it) {
        result.skipped[it.key()] = it.value().get<std::uint64_t>();
      }
    }
    if (j.contains("errors")) {
      for (const auto& e : j["errors"]) {
        result.errors.push_back(
            {e.at("id").get<std::string>(), e.at("stage").get<std::string>(), e.at("message").get<std::string>()});
      }
    }
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("report has an unexpected shape: ") + e.what());
  }
}

}  // namespace refinery
