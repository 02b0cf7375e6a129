#include "seqrfm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include "seqrfm/datagen.hpp"
#include "seqrfm/io.hpp"
#include "seqrfm/maximal.hpp"
#include "seqrfm/miner.hpp"
#include "seqrfm/oracle.hpp"

namespace seqrfm::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Timestamp parse_theta(const std::string& text) {
  if (text == "inf" || text == "unbounded") return kUnboundedSpan;
  Timestamp v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 0)
    throw UsageError("--theta expects a non-negative integer or 'inf', got '" + text + "'");
  return v;
}

std::string theta_label(Timestamp theta) { return theta == kUnboundedSpan ? "inf" : std::to_string(theta); }

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

MTDatabase load(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return parse_mt_database(in);
    std::ifstream file(path);
    if (!file) throw DataError("cannot open input '" + path + "'");
    return parse_mt_database(file);
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// Writes through `fn` to `path`, or to `fallback` for "-".
template <typename Fn>
void emit_to(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open output '" + path + "'");
  fn(file);
  if (!file) throw DataError("failed writing '" + path + "'");
}

struct MiningFlags {
  std::string input;
  std::string output = "-";
  std::string stats_out;
  double delta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::string theta = "inf";
  bool no_swm = false;
  bool no_em = false;
  bool no_pm = false;
  bool maximal = false;
  std::size_t max_len = 0;
  int threads = 1;
  double budget = kDefaultOracleBudget;

  void bind(CLI::App* cmd, bool with_output = true) {
    cmd->add_option("--input", input, "MT-database file ('-' for stdin)")->required();
    if (with_output) {
      cmd->add_option("--output", output, "result file ('-' for stdout)");
      cmd->add_option("--stats-out", stats_out, "run statistics file (default: stderr)");
      cmd->add_flag("--maximal", maximal, "keep only maximal patterns");
    }
    cmd->add_option("--delta", delta, "recency decay rate in [0,1)");
    cmd->add_option("--alpha", alpha, "absolute minimum recency");
    cmd->add_option("--beta", beta, "relative minimum frequency");
    cmd->add_option("--gamma", gamma, "relative minimum monetary");
    cmd->add_option("--theta", theta, "maximum time span (integer or 'inf')");
    cmd->add_flag("--no-swm", no_swm, "disable the SWM bound");
    cmd->add_flag("--no-em", no_em, "disable the EM bound");
    cmd->add_flag("--no-pm", no_pm, "disable the PM bound");
    cmd->add_option("--max-len", max_len, "maximum items per pattern (0 = unbounded)");
    cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  Params params() const {
    Params p{delta, alpha, beta, gamma, parse_theta(theta)};
    try {
      check_params(p);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  MinerOptions options() const {
    MinerOptions o;
    o.toggles = {!no_swm, !no_em, !no_pm};
    o.max_length = max_len;
    o.threads = threads;
    return o;
  }
};

void run_mine(const MiningFlags& f, bool maximal, const Streams& s) {
  const Params params = f.params();
  const MTDatabase db = load(f.input, s.in);
  if (maximal) {
    const auto result = mine_maximal(db, params, f.options());
    emit_to(f.output, s.out, [&](std::ostream& o) { write_result(o, result.mining.patterns, db.dictionary()); });
    emit_to(f.stats_out, s.err, [&](std::ostream& o) { write_maximal_run_stats(o, result); });
  } else {
    const auto result = mine(db, params, f.options());
    emit_to(f.output, s.out, [&](std::ostream& o) { write_result(o, result.patterns, db.dictionary()); });
    emit_to(f.stats_out, s.err, [&](std::ostream& o) { write_run_stats(o, result); });
  }
}

void run_oracle(const MiningFlags& f, bool maximal, const Streams& s) {
  const Params params = f.params();
  const MTDatabase db = load(f.input, s.in);
  const std::size_t cap = f.max_len == 0 ? kDefaultOracleMaxLength : f.max_len;
  const auto records = maximal ? oracle_mine_maximal(db, params, cap, f.budget) : oracle_mine(db, params, cap, f.budget);
  emit_to(f.output, s.out, [&](std::ostream& o) { write_result(o, records, db.dictionary()); });
  emit_to(f.stats_out, s.err, [&](std::ostream& o) { o << "patterns=" << records.size() << '\n'; });
}

struct BenchFlags {
  MiningFlags mining;
  std::vector<double> gammas;
  std::vector<std::string> thetas;
  std::vector<double> betas;
};

void run_bench(const BenchFlags& f, const Streams& s) {
  const MTDatabase db = load(f.mining.input, s.in);
  const std::vector<double> gammas = f.gammas.empty() ? std::vector<double>{f.mining.gamma} : f.gammas;
  const std::vector<std::string> thetas = f.thetas.empty() ? std::vector<std::string>{f.mining.theta} : f.thetas;
  const std::vector<double> betas = f.betas.empty() ? std::vector<double>{f.mining.beta} : f.betas;

  std::vector<std::vector<std::string>> rows{{"beta", "gamma", "theta", "Runtime(s)", "#cand", "#RFMs"}};
  auto fmt = [](double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return std::string(buf);
  };
  for (double beta : betas) {
    for (double gamma : gammas) {
      for (const auto& theta_text : thetas) {
        MiningFlags cell = f.mining;
        cell.beta = beta;
        cell.gamma = gamma;
        cell.theta = theta_text;
        const auto result = mine(db, cell.params(), cell.options());
        rows.push_back({fmt(beta, "%g"), fmt(gamma, "%g"), theta_label(parse_theta(theta_text)),
                        fmt(std::chrono::duration<double>(result.elapsed).count(), "%.3f"),
                        std::to_string(result.candidate_count), std::to_string(result.patterns.size())});
      }
    }
  }

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  emit_to(f.mining.output, s.out, [&](std::ostream& o) {
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) o << "  ";
        o << std::setw(static_cast<int>(width[c])) << row[c];
      }
      o << '\n';
    }
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compact RFM sequential pattern mining", "seqrfm"};
  app.require_subcommand(1);

  MiningFlags mine_flags, mine_max_flags, oracle_flags, oracle_max_flags;
  mine_flags.bind(app.add_subcommand("mine", "mine all compact RFM-patterns"));
  mine_max_flags.bind(app.add_subcommand("mine-max", "mine maximal RFM-patterns"));
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference miner");
  oracle_flags.bind(oracle_cmd);
  oracle_cmd->add_option("--budget", oracle_flags.budget, "refuse when items^max-len exceeds this");
  auto* oracle_max_cmd = app.add_subcommand("oracle-max", "brute-force maximal patterns");
  oracle_max_flags.bind(oracle_max_cmd);
  oracle_max_cmd->add_option("--budget", oracle_max_flags.budget, "refuse when items^max-len exceeds this");

  GenParams gp;
  std::string gen_output = "-";
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic MT-database");
  gen_cmd->add_option("--output", gen_output, "database file ('-' for stdout)");
  gen_cmd->add_option("--sequences", gp.sequence_count, "number of sequences");
  gen_cmd->add_option("--items", gp.distinct_items, "number of distinct items");
  gen_cmd->add_option("--avg-itemsets", gp.avg_itemsets, "mean itemsets per sequence");
  gen_cmd->add_option("--avg-items", gp.avg_items, "mean items per itemset");
  gen_cmd->add_option("--money-min", gp.money_min, "minimum item monetary value");
  gen_cmd->add_option("--money-max", gp.money_max, "maximum item monetary value");
  gen_cmd->add_option("--ts-min", gp.ts_min, "minimum timestamp");
  gen_cmd->add_option("--ts-max", gp.ts_max, "maximum timestamp");
  gen_cmd->add_option("--seed", gp.seed, "random seed");

  std::string stats_input, stats_output = "-";
  auto* stats_cmd = app.add_subcommand("stats", "print dataset statistics");
  stats_cmd->add_option("--input", stats_input, "MT-database file ('-' for stdin)")->required();
  stats_cmd->add_option("--output", stats_output, "statistics file ('-' for stdout)");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "candidate/runtime grid over gamma and theta");
  bench.mining.bind(bench_cmd, false);
  bench_cmd->add_option("--output", bench.mining.output, "table file ('-' for stdout)");
  bench_cmd->add_option("--gammas", bench.gammas, "comma-separated gamma values")->delimiter(',');
  bench_cmd->add_option("--thetas", bench.thetas, "comma-separated theta values")->delimiter(',');
  bench_cmd->add_option("--betas", bench.betas, "comma-separated beta values")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg_out, msg_err;
    const int code = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    err << msg_err.str();
    return code == 0 ? kOk : kUsage;
  }

  const Streams streams{in, out, err};
  try {
    if (app.got_subcommand("mine")) run_mine(mine_flags, mine_flags.maximal, streams);
    else if (app.got_subcommand("mine-max")) run_mine(mine_max_flags, true, streams);
    else if (app.got_subcommand("oracle")) run_oracle(oracle_flags, oracle_flags.maximal, streams);
    else if (app.got_subcommand("oracle-max")) run_oracle(oracle_max_flags, true, streams);
    else if (app.got_subcommand("gen")) {
      try {
        check_gen_params(gp);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto db = generate(gp);
      emit_to(gen_output, out, [&](std::ostream& o) { write_generated(o, db, gp); });
    } else if (app.got_subcommand("stats")) {
      const auto db = load(stats_input, in);
      emit_to(stats_output, out, [&](std::ostream& o) { write_stats(o, db_stats(db)); });
    } else if (app.got_subcommand("bench")) {
      run_bench(bench, streams);
    }
  } catch (const UsageError& e) {
    err << "seqrfm: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "seqrfm: " << e.what() << '\n';
    return kDataError;
  } catch (const OracleBudgetExceeded& e) {
    err << "seqrfm: " << e.what() << '\n';
    return kBudgetRefused;
  } catch (const std::invalid_argument& e) {
    err << "seqrfm: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace seqrfm::cli
