#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latmcts/harness.hpp"

namespace latmcts {

using KvPairs = std::vector<std::pair<std::string, std::string>>;

// Shortest round-trip decimal form; infinities print as "inf"/"-inf".
std::string format_double(double v);

// All writers start the file with one "# key=value" line per pair; stripping
// the "# " prefix yields a loadable config file. They throw std::runtime_error
// on I/O failure.
void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records,
                       const KvPairs& header);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows,
                       const KvPairs& header);
void write_summary_json(const std::string& path, const std::vector<SummaryRow>& rows,
                        const KvPairs& header);
void write_matrix_csv(const std::string& path, const Grid<long>& counts, const KvPairs& header);
void write_gap_csv(const std::string& path, const std::vector<NsarwConvergenceRow>& rows,
                   const KvPairs& header);

}  // namespace latmcts
