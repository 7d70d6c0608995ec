#include "nslrs/cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "nslrs/error.hpp"
#include "nslrs/lrseq.hpp"
#include "nslrs/serialize.hpp"

namespace nslrs {
namespace {

struct Common {
  u64 budget_nodes = SearchBudget{}.max_nodes;
  double budget_seconds = SearchBudget{}.max_seconds;
  unsigned wmax = 0;
  bool json_out = false;
  std::string out_file;

  SearchBudget budget() const {
    SearchBudget b;
    b.max_nodes = budget_nodes;
    b.max_seconds = budget_seconds;
    b.w_max = wmax;
    return b;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget-nodes", c.budget_nodes, "Search node limit")->check(CLI::PositiveNumber);
  cmd->add_option("--budget-seconds", c.budget_seconds, "Search time limit")->check(CLI::PositiveNumber);
  cmd->add_option("--wmax", c.wmax, "Largest parity-check weight used for pruning");
  cmd->add_flag("--json", c.json_out, "JSON output");
  cmd->add_option("--out", c.out_file, "Write output to FILE");
}

std::string describe(const PairReport& r) {
  std::ostringstream s;
  s << "(n,q) = (" << r.n << "," << r.q << ")  m = " << r.m << "  d = " << r.d << "\n";
  s << "order " << r.order << "  standard " << r.standard_order << "  "
    << (r.nonstandard ? "NONSTANDARD" : "standard") << "\n";
  s << "family " << r.family.to_string() << "  method " << method_name(r.method) << "\n";
  if (r.prediction_mismatch) s << "PREDICTION_MISMATCH\n";
  s << "generators:\n";
  for (const auto& L : r.generators) {
    s << "  ";
    for (unsigned i = 0; i < L.m(); ++i) s << (i ? " " : "") << r.ctx->format(L.coeffs()[i]);
    s << "\n";
  }
  s << "nodes " << r.stats.nodes << "  seconds " << r.stats.seconds << "\n";
  return s.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

// "identity" and "frobenius" are accepted in place of a file.
QLinearMap load_map(const std::string& spec, u64 n, u64 q) {
  const auto ctx = Field::extension(q, mult_order(n, q));
  if (spec == "identity") return QLinearMap::identity(ctx);
  if (spec == "frobenius") return QLinearMap::monomial(ctx, 1, ctx->ext_degree() > 1 ? 1 : 0);
  json j = read_json_file(spec);
  if (!j.contains("q")) j["q"] = q;
  if (j.at("q").get<u64>() != q) throw Error(ErrorKind::ContextMismatch, spec + " is a map for a different q");
  return map_from_json(j, ctx);
}

class Output {
 public:
  Output(const std::string& file, std::ostream& fallback) : os_(&fallback) {
    if (!file.empty()) {
      file_.open(file);
      if (!file_) throw Error(ErrorKind::Parse, "cannot write " + file);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int verdict(const PairReport& r) { return r.nonstandard ? kExitNonstandard : kExitStandard; }

int emit_report(const PairReport& r, const Common& c, std::ostream& out) {
  Output o(c.out_file, out);
  if (c.json_out) {
    *o << report_to_json(r).dump() << "\n";
  } else {
    *o << describe(r);
  }
  return verdict(r);
}

}  // namespace

std::vector<std::pair<u64, u64>> sweep_pairs(u64 q_max, u64 n_max) {
  std::vector<std::pair<u64, u64>> pairs;
  for (u64 q = 2; q <= q_max; ++q) {
    if (!is_prime_power(q)) continue;
    for (u64 n = 1; n <= n_max; ++n) {
      if (std::gcd(n, q) == 1) pairs.emplace_back(n, q);
    }
  }
  return pairs;
}

std::string sweep_catalog(u64 q_max, u64 n_max, const SearchBudget& budget, unsigned workers) {
  const auto pairs = sweep_pairs(q_max, n_max);
  std::vector<std::string> lines(pairs.size());
  SearchBudget inner = budget;
  inner.threads = 1;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < pairs.size();) {
      const auto [n, q] = pairs[k];
      json entry = {{"timestamp", now_timestamp()}, {"version", kVersion}, {"budget", budget_to_json(budget)}};
      try {
        entry["report"] = report_to_json(decide(n, q, inner));
      } catch (const Error& e) {
        entry["n"] = n;
        entry["q"] = q;
        entry["error"] = e.what();
      }
      lines[k] = entry.dump();
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, pairs.size()))));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear maps fixing roots of unity, and the automorphisms of irreducible cyclic codes"};
  app.require_subcommand(1);
  Common c;
  u64 n = 0, q = 0, q_max = 0, n_max = 0, factor = 0;
  unsigned t = 0, workers = 0;
  std::size_t count = 0;
  std::vector<std::string> map_files;
  std::string map_file = "identity";
  bool csv = false;

  auto* check = app.add_subcommand("check", "Decide whether (n,q) is standard");
  check->add_option("n", n)->required();
  check->add_option("q", q)->required();
  add_common(check, c);

  auto* sweep = app.add_subcommand("sweep", "Catalog all coprime pairs in a range as JSON lines");
  sweep->add_option("q_max", q_max)->required();
  sweep->add_option("n_max", n_max)->required();
  sweep->add_option("--threads", workers, "Worker count (default NSLRS_THREADS or all cores)");
  add_common(sweep, c);

  auto* m2 = app.add_subcommand("classify-m2", "Compare m = 2 verdicts with the predicted classification");
  m2->add_option("q_max", q_max)->required();
  add_common(m2, c);

  auto* code = app.add_subcommand("code", "Generator, parity check and weights of C_{n,q}");
  code->add_option("n", n)->required();
  code->add_option("q", q)->required();
  code->add_flag("--csv", csv, "Print only the weight table as CSV");
  add_common(code, c);

  auto* seq = app.add_subcommand("seq", "Sequence L(xi^k) for a map");
  seq->add_option("n", n)->required();
  seq->add_option("q", q)->required();
  seq->add_option("--map", map_file, "Map JSON file, or identity / frobenius");
  seq->add_option("--count", count, "Number of terms (default one period)");
  add_common(seq, c);

  auto* cert = app.add_subcommand("certify", "Order of the group generated by the standard maps and the given ones");
  cert->add_option("n", n)->required();
  cert->add_option("q", q)->required();
  cert->add_option("--map", map_files, "Map JSON file (repeatable)");
  add_common(cert, c);

  auto* lft = app.add_subcommand("lift", "Lift the group of (n,q) to (n,q^t)");
  lft->add_option("n", n)->required();
  lft->add_option("q", q)->required();
  lft->add_option("t", t)->required();
  add_common(lft, c);

  auto* ext = app.add_subcommand("extend", "Extend the group of (n,q) to (nf,q)");
  ext->add_option("n", n)->required();
  ext->add_option("q", q)->required();
  ext->add_option("f", factor)->required();
  add_common(ext, c);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (check->parsed()) return emit_report(decide(n, q, c.budget()), c, out);

    if (sweep->parsed()) {
      Output o(c.out_file, out);
      *o << sweep_catalog(q_max, n_max, c.budget(), resolve_threads(workers));
      return 0;
    }

    if (m2->parsed()) {
      const M2Table table = classify_m2(q_max, c.budget());
      Output o(c.out_file, out);
      if (c.json_out) {
        *o << m2_table_to_json(table).dump() << "\n";
      } else {
        *o << "q,n,d,order,nonstandard,predicted_order,predicted_case,agrees\n";
        for (const auto& r : table.rows) {
          *o << r.q << "," << r.n << "," << r.d << "," << r.order << "," << (r.nonstandard ? 1 : 0) << ","
             << r.predicted_order << "," << r.predicted_case << "," << (r.agrees() ? "yes" : "NO") << "\n";
        }
        *o << "mismatches " << table.mismatches << ", d violations " << table.d_violations << "\n";
      }
      return table.mismatches == 0 && table.d_violations == 0 ? 0 : kExitError;
    }

    if (code->parsed()) {
      const CyclicCode C = irreducible_code(n, q);
      const CyclicCode D = dual(C);
      std::map<std::size_t, u64> dist;
      bool have_dist = true;
      try {
        dist = weight_distribution(C);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TooLarge) throw;
        have_dist = false;
      }
      Output o(c.out_file, out);
      if (csv) {
        if (!have_dist) throw Error(ErrorKind::TooLarge, "code too large for a full weight distribution");
        *o << weight_csv(dist);
      } else if (c.json_out) {
        json j = code_to_json(C);
        j["dimension"] = C.dimension();
        j["dual"] = code_to_json(D);
        if (have_dist) {
          json w = json::object();
          for (auto [wt, cnt] : dist) w[std::to_string(wt)] = cnt;
          j["weights"] = w;
        }
        *o << j.dump() << "\n";
      } else {
        *o << "C_{" << n << "," << q << "}: length " << n << ", dimension " << C.dimension() << "\n";
        *o << "generator     " << C.generator().to_string() << "\n";
        *o << "parity check  " << C.parity_check().to_string() << "\n";
        *o << "dual generator " << D.generator().to_string() << "\n";
        if (have_dist) *o << weight_csv(dist);
      }
      return 0;
    }

    if (seq->parsed()) {
      const QLinearMap L = load_map(map_file, n, q);
      const UnityGroup U(L.ctx(), n);
      const SeqWindow s = seq_from_map(L, FFElement(L.ctx(), U.xi()), count ? count : n + L.m());
      const bool represents = s.terms.size() >= n && represents_unity_group(s, U);
      const auto ratio = is_cyclic(s);
      Output o(c.out_file, out);
      if (c.json_out) {
        json terms = json::array();
        for (Elem e : s.terms) terms.push_back(L.ctx()->coords(e));
        *o << json{{"n", n}, {"q", q}, {"terms", terms}, {"represents", represents}, {"cyclic", ratio.has_value()}}.dump()
           << "\n";
      } else {
        *o << dump_sequence(s);
        *o << "represents U: " << (represents ? "true" : "false") << "\n";
        *o << "cyclic: " << (ratio ? "true" : "false") << "\n";
      }
      return 0;
    }

    if (cert->parsed()) {
      std::vector<QLinearMap> maps;
      for (const auto& f : map_files) maps.push_back(load_map(f, n, q));
      return emit_report(certify(n, q, maps), c, out);
    }

    if (lft->parsed()) return emit_report(lift(decide(n, q, c.budget()), t), c, out);
    if (ext->parsed()) return emit_report(extend(decide(n, q, c.budget()), factor), c, out);
  } catch (const NotFixingError& e) {
    err << "error: " << e.what() << " (map index " << e.index() << ")\n";
    return kExitError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace nslrs
