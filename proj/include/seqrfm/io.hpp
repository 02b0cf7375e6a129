#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "seqrfm/model.hpp"

namespace seqrfm {

/// Malformed database text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Reads the MT-database text format, one sequence per line:
///
///   <100> a:15 d:24 -1 <95> g:50 -1 <81> b:17 -1 -2
///
/// Lines starting with '#' and blank lines are skipped. Throws ParseError on
/// grammar violations and ValidationError on semantic ones.
MTDatabase parse_mt_database(std::istream& in);
MTDatabase parse_mt_database(std::string_view text);

/// Inverse of parse_mt_database (no comment lines).
void write_mt_database(std::ostream& out, const MTDatabase& db);
std::string serialize_db(const MTDatabase& db);

/// "{a d}{g}"
std::string format_pattern(const Pattern& p, const ItemDictionary& dict);
/// Accepts the format_pattern form; items within braces may be unsorted.
Pattern parse_pattern(std::string_view text, const ItemDictionary& dict);

/// Recency with exactly four decimals.
std::string format_recency(double r);

/// One "{..}.. #R:x.xxxx #F:n #M:n" line per record, in pattern order.
void write_result(std::ostream& out, std::vector<PatternRecord> records, const ItemDictionary& dict);
std::string serialize_result(std::vector<PatternRecord> records, const ItemDictionary& dict);

struct DatasetStats {
  std::size_t sequence_count = 0;
  std::size_t distinct_items = 0;
  std::size_t max_sequence_length = 0;
  double avg_sequence_length = 0.0;
  double avg_itemsets_per_sequence = 0.0;
  double avg_items_per_itemset = 0.0;
  Money total_monetary = 0;
};

DatasetStats db_stats(const MTDatabase& db);
/// key=value lines: sequences, distinct_items, max_seq_len, avg_seq_len,
/// avg_itemsets, avg_items_per_itemset, total_monetary.
void write_stats(std::ostream& out, const DatasetStats& stats);

}  // namespace seqrfm
