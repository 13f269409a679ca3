#pragma once

#include <string>
#include <vector>

#include "pkb/inference.hpp"
#include "pkb/search.hpp"

namespace pkb {

enum class ReportFormat { Text, Json };

// Everything a query run produced, ready to serialize. Owns the search
// result; `alignments` and group members point into it, so reports move
// but do not copy.
struct QueryReport {
    std::string command;  // align | infer | recognize
    NewPattern query;
    SearchParams params;
    SearchResult search;
    std::vector<const ScoredAlignment*> alignments;  // reported slice
    std::vector<CoverageGroup> groups;               // filled for infer
    std::vector<Recognition> recognition;            // filled for recognize
    bool include_groups = false;
    bool include_recognition = false;

    QueryReport() = default;
    QueryReport(const QueryReport&) = delete;
    QueryReport& operator=(const QueryReport&) = delete;
    QueryReport(QueryReport&&) = default;
    QueryReport& operator=(QueryReport&&) = default;

    bool empty() const { return alignments.empty(); }
};

QueryReport run_query(const std::string& command, const KnowledgeStore& store,
                      const NewPattern& np, const SearchParams& params);

// Deterministic emission: sorted keys, 6 fixed fractional digits for every
// real number, '\n' line endings. Emitting the same report twice is
// byte-identical.
std::string emit_report(const QueryReport& report, const KnowledgeStore& store,
                        ReportFormat format);

// Small helpers shared with the CLI's validate/stats/oracle commands.
std::string format_bits(double v);

}  // namespace pkb
