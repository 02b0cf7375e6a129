#include "seqrfm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace seqrfm {

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start + 1)});
  }
  return out;
}

bool parse_non_negative(std::string_view s, std::int64_t& value) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

RawSequence parse_line(std::string_view line, int lineno) {
  const auto tokens = tokenize(line);
  const int eol = static_cast<int>(line.size()) + 1;
  RawSequence seq;
  std::size_t t = 0;

  auto fail = [&](int col, const std::string& msg) -> ParseError { return ParseError(lineno, col, msg); };

  while (true) {
    if (t == tokens.size()) throw fail(eol, "expected '<timestamp>' or '-2'");
    const Token& head = tokens[t];
    if (head.text == "-2") {
      if (seq.empty()) throw fail(head.column, "sequence has no itemsets");
      if (t + 1 != tokens.size()) throw fail(tokens[t + 1].column, "unexpected token after '-2'");
      return seq;
    }
    if (head.text.size() < 3 || head.text.front() != '<' || head.text.back() != '>')
      throw fail(head.column, "expected '<timestamp>', got '" + std::string(head.text) + "'");
    RawItemset is;
    if (!parse_non_negative(head.text.substr(1, head.text.size() - 2), is.timestamp))
      throw fail(head.column + 1, "invalid timestamp '" + std::string(head.text) + "'");
    ++t;

    while (t < tokens.size() && tokens[t].text != "-1") {
      const Token& tok = tokens[t];
      const auto colon = tok.text.find(':');
      if (colon == std::string_view::npos) throw fail(tok.column, "expected 'item:money', got '" + std::string(tok.text) + "'");
      const auto name = tok.text.substr(0, colon);
      if (!is_valid_item_token(name)) throw fail(tok.column, "invalid item id '" + std::string(name) + "'");
      Money money = 0;
      if (!parse_non_negative(tok.text.substr(colon + 1), money))
        throw fail(tok.column + static_cast<int>(colon) + 1, "invalid monetary value in '" + std::string(tok.text) + "'");
      is.items.emplace_back(std::string(name), money);
      ++t;
    }
    if (t == tokens.size()) throw fail(eol, "expected '-1' to close itemset");
    if (is.items.empty()) throw fail(tokens[t].column, "itemset has no items");
    ++t;  // "-1"
    seq.push_back(std::move(is));
  }
}

}  // namespace

MTDatabase parse_mt_database(std::istream& in) {
  std::vector<RawSequence> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    raw.push_back(parse_line(line, lineno));
  }
  MTDatabase db = MTDatabase::from_raw(raw);
  if (auto violations = validate_database(db); !violations.empty()) throw ValidationError(std::move(violations));
  return db;
}

MTDatabase parse_mt_database(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_mt_database(in);
}

void write_mt_database(std::ostream& out, const MTDatabase& db) {
  const auto& dict = db.dictionary();
  for (const auto& seq : db.sequences()) {
    for (const auto& is : seq.itemsets()) {
      out << '<' << is.timestamp << '>';
      for (const auto& it : is.items) out << ' ' << dict.name(it.item) << ':' << it.money;
      out << " -1 ";
    }
    out << "-2\n";
  }
}

std::string serialize_db(const MTDatabase& db) {
  std::ostringstream out;
  write_mt_database(out, db);
  return out.str();
}

std::string format_pattern(const Pattern& p, const ItemDictionary& dict) {
  std::string s;
  for (const auto& is : p.itemsets()) {
    s += '{';
    for (std::size_t i = 0; i < is.size(); ++i) {
      if (i) s += ' ';
      s += dict.name(is[i]);
    }
    s += '}';
  }
  return s;
}

Pattern parse_pattern(std::string_view text, const ItemDictionary& dict) {
  std::vector<Pattern::Itemset> itemsets;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '{') throw std::invalid_argument("pattern: expected '{' in '" + std::string(text) + "'");
    const auto close = text.find('}', i);
    if (close == std::string_view::npos) throw std::invalid_argument("pattern: missing '}'");
    Pattern::Itemset is;
    for (const auto& tok : tokenize(text.substr(i + 1, close - i - 1))) is.push_back(dict.id(tok.text));
    std::sort(is.begin(), is.end());
    itemsets.push_back(std::move(is));
    i = close + 1;
    skip_ws();
  }
  return Pattern(std::move(itemsets));
}

namespace {
std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}
}  // namespace

std::string format_recency(double r) { return fixed4(r); }

void write_result(std::ostream& out, std::vector<PatternRecord> records, const ItemDictionary& dict) {
  sort_records(records);
  for (const auto& rec : records) {
    out << format_pattern(rec.pattern, dict) << " #R:" << format_recency(rec.stats.recency)
        << " #F:" << rec.stats.frequency << " #M:" << rec.stats.monetary << '\n';
  }
}

std::string serialize_result(std::vector<PatternRecord> records, const ItemDictionary& dict) {
  std::ostringstream out;
  write_result(out, std::move(records), dict);
  return out.str();
}

DatasetStats db_stats(const MTDatabase& db) {
  DatasetStats st;
  st.sequence_count = db.size();
  st.distinct_items = db.item_universe();
  st.total_monetary = db.total_monetary();
  std::size_t items = 0;
  std::size_t itemsets = 0;
  for (const auto& seq : db.sequences()) {
    const auto n = seq.item_count();
    items += n;
    itemsets += seq.size();
    st.max_sequence_length = std::max(st.max_sequence_length, n);
  }
  if (st.sequence_count > 0) {
    st.avg_sequence_length = static_cast<double>(items) / static_cast<double>(st.sequence_count);
    st.avg_itemsets_per_sequence = static_cast<double>(itemsets) / static_cast<double>(st.sequence_count);
  }
  if (itemsets > 0) st.avg_items_per_itemset = static_cast<double>(items) / static_cast<double>(itemsets);
  return st;
}

void write_stats(std::ostream& out, const DatasetStats& st) {
  out << "sequences=" << st.sequence_count << '\n'
      << "distinct_items=" << st.distinct_items << '\n'
      << "max_seq_len=" << st.max_sequence_length << '\n'
      << "avg_seq_len=" << fixed4(st.avg_sequence_length) << '\n'
      << "avg_itemsets=" << fixed4(st.avg_itemsets_per_sequence) << '\n'
      << "avg_items_per_itemset=" << fixed4(st.avg_items_per_itemset) << '\n'
      << "total_monetary=" << st.total_monetary << '\n';
}

}  // namespace seqrfm
