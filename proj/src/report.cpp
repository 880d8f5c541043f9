#include "latmcts/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace latmcts {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

void put_header(std::ofstream& out, const KvPairs& header) {
  for (const auto& [k, v] : header) out << "# " << k << "=" << v << "\n";
}

constexpr const char* kSummaryColumns =
    "experiment,strategy,N,sigma,loops,time_ms,trials,mean_excess,mean_ratio,std,ci95,"
    "q1,median,q3,capped_count,base_seed";

void put_summary_row(std::ofstream& out, const SummaryRow& r) {
  out << r.experiment << ',' << r.strategy << ',' << r.side << ',' << format_double(r.sigma) << ','
      << r.loops << ',' << format_double(r.time_ms) << ',' << r.trials << ','
      << format_double(r.stats.mean_excess) << ',' << format_double(r.stats.mean_ratio) << ','
      << format_double(r.stats.std_dev) << ',' << format_double(r.stats.ci95_half_width) << ','
      << format_double(r.stats.q1) << ',' << format_double(r.stats.median) << ','
      << format_double(r.stats.q3) << ',' << r.capped_count << ',' << r.base_seed << "\n";
}

}  // namespace

void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records,
                       const KvPairs& header) {
  auto out = open_out(path);
  put_header(out, header);
  out << "trial,seed,target_x,target_y,optimal_steps,steps_taken,capped,strategy\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << r.target.x << ',' << r.target.y << ','
        << r.optimal_steps << ',' << r.steps_taken << ',' << (r.capped ? 1 : 0) << ','
        << r.strategy << "\n";
  }
  finish(out, path);
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows,
                       const KvPairs& header) {
  auto out = open_out(path);
  put_header(out, header);
  out << kSummaryColumns << "\n";
  for (const auto& r : rows) put_summary_row(out, r);
  finish(out, path);
}

void write_summary_json(const std::string& path, const std::vector<SummaryRow>& rows,
                        const KvPairs& header) {
  nlohmann::ordered_json doc;
  auto& config = doc["config"];
  config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : header) config[k] = v;
  auto& out_rows = doc["rows"];
  out_rows = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    j["strategy"] = r.strategy;
    j["N"] = r.side;
    if (std::isinf(r.sigma))
      j["sigma"] = "inf";
    else
      j["sigma"] = r.sigma;
    j["loops"] = r.loops;
    j["time_ms"] = r.time_ms;
    j["trials"] = r.trials;
    j["mean_excess"] = r.stats.mean_excess;
    j["mean_ratio"] = r.stats.mean_ratio;
    j["std"] = r.stats.std_dev;
    j["ci95"] = r.stats.ci95_half_width;
    j["q1"] = r.stats.q1;
    j["median"] = r.stats.median;
    j["q3"] = r.stats.q3;
    j["capped_count"] = r.capped_count;
    j["base_seed"] = r.base_seed;
    out_rows.push_back(std::move(j));
  }
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
  finish(out, path);
}

void write_matrix_csv(const std::string& path, const Grid<long>& counts, const KvPairs& header) {
  auto out = open_out(path);
  put_header(out, header);
  const int n = counts.side();
  for (int y = 1; y <= n; ++y) {
    for (int x = 1; x <= n; ++x) {
      if (x > 1) out << ',';
      out << counts.at({x, y});
    }
    out << "\n";
  }
  finish(out, path);
}

void write_gap_csv(const std::string& path, const std::vector<NsarwConvergenceRow>& rows,
                   const KvPairs& header) {
  auto out = open_out(path);
  put_header(out, header);
  out << "N,mean_steps_mcts,mean_steps_nsarw,rel_gap\n";
  for (const auto& r : rows) {
    out << r.side << ',' << format_double(r.mean_steps_mcts) << ','
        << format_double(r.mean_steps_nsarw) << ',' << format_double(r.rel_gap) << "\n";
  }
  finish(out, path);
}

}  // namespace latmcts
