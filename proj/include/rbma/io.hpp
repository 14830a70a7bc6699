#ifndef RBMA_IO_HPP
#define RBMA_IO_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "rbma/instance.hpp"
#include "rbma/rbm.hpp"
#include "rbma/rbmaa.hpp"

namespace rbma::io {

// History / assignment CSV: optional "Node1,Node2" header, then
// "left,right" rows. Fields are trimmed and blank lines skipped.
// Malformed rows raise kParse naming the 1-based line number.
std::vector<HistoryRecord> parse_history(std::istream& in);
std::vector<HistoryRecord> read_history(const std::filesystem::path& path);

void write_history(const std::filesystem::path& path, const std::vector<HistoryRecord>& records);

// One "left,right" line per row. Throws kInfeasible (without touching the
// file) unless x is row-feasible.
void write_assignment(std::ostream& out, const Instance& inst, const BinaryMatrix& x);
void write_assignment(const std::filesystem::path& path, const Instance& inst,
                      const BinaryMatrix& x);

// Maps assignment records onto the instance's labels. Unknown labels and
// exact duplicate pairs raise kParse; a row listed with two different columns
// or not at all shows up as a row sum != 1.
BinaryMatrix assignment_matrix(const Instance& inst, const std::vector<HistoryRecord>& pairs);

// Dense dump: header "label,<right labels...>", then one row of counts per
// left label.
void write_weight_matrix(std::ostream& out, const Instance& inst);

// Trace CSV with columns iter,rows_resolved,threshold.
void write_trace(std::ostream& out, const RbmaaTrace& trace);

// "RBMP v1" text format with shortest round-trip decimals.
void write_params(std::ostream& out, const RbmParams& p);
RbmParams parse_params(std::istream& in);
void save_params(const std::filesystem::path& path, const RbmParams& p);
RbmParams load_params(const std::filesystem::path& path);

// Synthetic many-to-one history. Left labels A1..An, right labels B1..Bm.
// Each row draws `records_per_row` records; each record hits that row's
// uniformly chosen home column with probability `concentration`, otherwise a
// uniformly chosen other column.
std::vector<HistoryRecord> generate_synthetic(std::size_t n, std::size_t m,
                                              std::size_t records_per_row,
                                              double concentration, std::uint64_t seed);

// Shortest decimal that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace rbma::io

#endif  // RBMA_IO_HPP
