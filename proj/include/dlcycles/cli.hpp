#pragma once

// The dlcycles command line. run() parses argv, dispatches to one cmd_*
// function and renders its Report as aligned text, CSV or JSON.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure, 3 cache error.

#include <CLI11.hpp>

#include <condition_variable>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "dlcycles/average.hpp"
#include "dlcycles/bigcheck.hpp"
#include "dlcycles/cache.hpp"
#include "dlcycles/constants.hpp"
#include "dlcycles/counts.hpp"
#include "dlcycles/parallel.hpp"
#include "dlcycles/reference_tables.hpp"
#include "dlcycles/verify.hpp"

namespace dlc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2, kCacheFailure = 3 };

enum class Format { Pretty, Csv, Json };

struct RunConfig {
  std::string subcommand;
  u64 p = 0;
  std::string eq = "all";
  bool oracle = false;
  u64 lo = 5, hi = 0;
  u64 x = reference::kAverageX;
  std::string convention = "auto";
  unsigned threads = default_threads();
  Format format = Format::Pretty;
  std::string cache_path = "dlcycles-cache.jsonl";
  std::string suite = "small";
  u64 max_p = 0;  // verify range; 0 = suite default
  std::size_t bucket_cap = std::size_t{1} << 16;
  u64 cutoff = 10'000'000;
  std::string table;
  std::string which;
  u64 k = 29, j = 5;
  unsigned rounds = 40;

  CountOptions count_options() const { return {threads, bucket_cap}; }
};

// ---------------------------------------------------------------- reports

using Value = std::variant<u64, i64, double, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct Report {
  std::vector<std::pair<std::string, Value>> summary;
  std::vector<Table> tables;

  void set(std::string key, Value v) { summary.emplace_back(std::move(key), std::move(v)); }
  Table& table(std::string name, std::vector<std::string> columns) {
    tables.push_back({std::move(name), std::move(columns), {}});
    return tables.back();
  }
};

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string to_text(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) return x;
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return format_real(x);
        else return std::to_string(x);
      },
      v);
}

inline nlohmann::ordered_json to_json_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return nullptr;
          return std::stod(format_real(x));  // 12 significant digits
        } else {
          return x;
        }
      },
      v);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline void render_pretty(const Report& r, std::ostream& out) {
  std::size_t kw = 0;
  for (const auto& [k, v] : r.summary) kw = std::max(kw, k.size());
  for (const auto& [k, v] : r.summary) out << std::left << std::setw(static_cast<int>(kw)) << k << "  " << to_text(v) << "\n";
  for (const auto& t : r.tables) {
    out << "\n" << t.name << "\n";
    std::vector<std::size_t> w(t.columns.size());
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = t.columns[c].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.rows) {
      cells.emplace_back();
      for (std::size_t c = 0; c < row.size(); ++c) {
        cells.back().push_back(to_text(row[c]));
        w[c] = std::max(w[c], cells.back().back().size());
      }
    }
    auto line = [&](const std::vector<std::string>& v) {
      out << " ";
      for (std::size_t c = 0; c < v.size(); ++c) {
        out << " ";
        if (c == 0) out << std::left;
        else out << std::right;
        out << std::setw(static_cast<int>(w[c])) << v[c];
      }
      out << "\n";
    };
    line(t.columns);
    for (const auto& row : cells) line(row);
  }
}

inline void render_csv(const Report& r, std::ostream& out) {
  bool first = true;
  if (!r.summary.empty()) {
    out << "table,key,value\n";
    for (const auto& [k, v] : r.summary) out << "summary," << csv_field(k) << "," << csv_field(to_text(v)) << "\n";
    first = false;
  }
  for (const auto& t : r.tables) {
    if (!first) out << "\n";
    first = false;
    out << "table";
    for (const auto& c : t.columns) out << "," << csv_field(c);
    out << "\n";
    for (const auto& row : t.rows) {
      out << csv_field(t.name);
      for (const auto& v : row) out << "," << csv_field(to_text(v));
      out << "\n";
    }
  }
}

inline void render_json(const Report& r, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.summary) doc["summary"][k] = to_json_value(v);
  doc["tables"] = nlohmann::ordered_json::object();
  for (const auto& t : r.tables) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json o;
      for (std::size_t c = 0; c < row.size(); ++c) o[t.columns[c]] = to_json_value(row[c]);
      rows.push_back(std::move(o));
    }
    doc["tables"][t.name] = std::move(rows);
  }
  out << doc.dump(2) << "\n";
}

inline void render(const Report& r, Format f, std::ostream& out) {
  switch (f) {
    case Format::Pretty: render_pretty(r, out); break;
    case Format::Csv: render_csv(r, out); break;
    case Format::Json: render_json(r, out); break;
  }
}

// ---------------------------------------------------------------- helpers

namespace detail {

inline std::vector<std::string> grid_columns(const std::string& row_name) {
  return {row_name, "ANY", "PR", "RP", "RPPR"};
}

inline void add_grid(Report& rep, const std::string& name, const Grid& g, const std::string& row_name) {
  auto& t = rep.table(name, grid_columns(row_name));
  for (int r = 0; r < 4; ++r)
    t.rows.push_back({std::string(to_string(kConditions[r])), g[r][0], g[r][1], g[r][2], g[r][3]});
}

inline std::string cond(int i) { return std::string(to_string(kConditions[i])); }

inline SmallPrimes parse_convention(const std::string& s) {
  if (s == "5") return SmallPrimes::From5;
  if (s == "3") return SmallPrimes::From3;
  if (s == "2") return SmallPrimes::From2;
  throw DomainError("convention must be auto, 2, 3 or 5");
}

/// Record source for averages: cache first, compute and append otherwise.
inline std::function<PrimeRecord(u64)> cached_fetch(Cache& cache, const CountOptions& opt) {
  return [&cache, opt](u64 p) {
    if (!cache.contains(p)) cache.append(compute_record(p, opt));
    return cache.at(p);
  };
}

inline SmallPrimes choose_convention(const RunConfig& cfg, const std::function<PrimeRecord(u64)>& fetch) {
  if (cfg.convention != "auto") return parse_convention(cfg.convention);
  if (cfg.x == reference::kAverageX) return resolve_convention(cfg.x, fetch, reference::kFpAverage[0][0]).chosen;
  return SmallPrimes::From3;
}

inline void add_checks(Report& rep, const CheckLog& log) {
  auto& t = rep.table("checks", {"id", "checked", "failed", "status", "first_failure"});
  u64 pass = 0, known = 0, blocking = 0;
  for (const auto& r : log.results()) {
    t.rows.push_back({r.id, r.checked, r.failed, r.status(), r.first_failure});
    if (r.failed == 0) ++pass;
    else if (r.blocking()) ++blocking;
    else ++known;
  }
  rep.set("checks_passed", pass);
  rep.set("checks_failed_known", known);
  rep.set("checks_failed", blocking);
}

}  // namespace detail

// ---------------------------------------------------------------- commands

inline int cmd_count(const RunConfig& cfg, Report& rep) {
  if (!is_prime(cfg.p)) throw NotPrime(cfg.p);
  PrimeContext ctx(cfg.p);
  const auto opt = cfg.count_options();
  const bool all = cfg.eq == "all";
  if (!all && cfg.eq != "fp" && cfg.eq != "ha" && cfg.eq != "tc") throw DomainError("--eq must be fp, ha, tc or all");
  rep.set("p", cfg.p);
  int status = kOk;
  if (all || cfg.eq == "fp") detail::add_grid(rep, "fp", count_fp(ctx, opt).total(), "g\\h");
  if (all || cfg.eq == "ha") {
    const auto ha = count_ha(ctx, std::nullopt, opt);
    detail::add_grid(rep, "ha-trivial", ha.trivial, "h\\a");
    detail::add_grid(rep, "ha-nontrivial", ha.nontrivial, "h\\a");
  }
  if (all || cfg.eq == "tc") {
    const TcResult tc = count_tc(ctx, cfg.oracle ? TcMethod::Direct : TcMethod::Smith, opt);
    rep.set("tc_method", std::string(cfg.oracle ? "direct" : "smith"));
    if (cfg.oracle) {
      const TcResult smith = count_tc(ctx, TcMethod::Smith, opt);
      const bool agree = smith.matrix.trivial == tc.matrix.trivial && smith.matrix.nontrivial == tc.matrix.nontrivial &&
                         smith.ord == tc.ord;
      rep.set("oracle_agrees", agree);
      if (!agree) status = kVerificationFailed;
    }
    rep.set("tc_trivial", at(tc.matrix.trivial, Condition::Any, Condition::Any));
    detail::add_grid(rep, "tc-trivial", tc.matrix.trivial, "g\\h");
    detail::add_grid(rep, "tc-nontrivial", tc.matrix.nontrivial, "g\\h");
    auto& t = rep.table("tc-same-order", {"h", "trivial", "nontrivial"});
    t.rows.push_back({std::string("RP"), tc.ord.h_rp_trivial, tc.ord.h_rp_nontrivial});
    t.rows.push_back({std::string("ANY"), tc.ord.h_any_trivial, tc.ord.h_any_nontrivial});
  }
  return status;
}

inline int cmd_table(const RunConfig& cfg, Report& rep) {
  const std::string& name = cfg.table;
  auto observed = [&](const Grid& published, auto select) {
    const PrimeRecord r = compute_record(reference::kTableModulus, cfg.count_options());
    const Grid& ours = select(r);
    auto& t = rep.table(name, {"row", "col", "computed", "published", "match"});
    u64 mismatches = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const bool ok = ours[i][j] == published[i][j];
        mismatches += !ok;
        t.rows.push_back({detail::cond(i), detail::cond(j), ours[i][j], published[i][j], ok});
      }
    rep.set("p", reference::kTableModulus);
    rep.set("mismatches", mismatches);
  };
  auto averages = [&](const reference::RealGrid& published, RationalGrid AverageReport::*field) {
    Cache cache(cfg.cache_path);
    const auto fetch = detail::cached_fetch(cache, cfg.count_options());
    const SmallPrimes conv = detail::choose_convention(cfg, fetch);
    const AverageReport a = average_from(reference::kAverageX, conv, fetch, AverageConstants{});
    auto& t = rep.table(name, {"row", "col", "computed", "published", "deviation", "within_5e-10", "known_gap"});
    u64 flagged = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double v = to_double((a.*field)[i][j]);
        const double dev = v - published[i][j];
        const bool ok = std::fabs(dev) <= tolerance::kAverageCell;
        flagged += !ok;
        t.rows.push_back({detail::cond(i), detail::cond(j), v, published[i][j], dev, ok,
                          reference::average_cell_not_reproduced(
                              dlc::detail::cell_id(name, i, j))});
      }
    rep.set("x", reference::kAverageX);
    rep.set("convention", std::string(to_string(conv)));
    rep.set("primes_used", a.primes_used);
    rep.set("flagged", flagged);
  };
  auto constants = [&](char family, const auto& published, double tol) {
    auto& t = rep.table(name, {"k", "computed", "tail_bound", "published", "deviation", "within_tolerance"});
    u64 flagged = 0;
    for (unsigned k = 1; k <= 7; ++k) {
      const auto r = euler_product(std::string(1, family) + std::to_string(k), cfg.cutoff, cfg.threads);
      const double dev = r.value - published[k - 1];
      flagged += std::fabs(dev) > tol;
      t.rows.push_back({u64{k}, r.value, r.tail_bound, published[k - 1], dev, std::fabs(dev) <= tol});
    }
    rep.set("prime_cutoff", cfg.cutoff);
    rep.set("tolerance", tol);
    rep.set("flagged", flagged);
  };

  if (name == "1c") observed(reference::kFpObserved, [](const PrimeRecord& r) -> const Grid& { return r.fp; });
  else if (name == "4c") observed(reference::kHaObserved, [](const PrimeRecord& r) -> const Grid& { return r.ha_nontrivial; });
  else if (name == "5c") observed(reference::kTcObserved, [](const PrimeRecord& r) -> const Grid& { return r.tc_nontrivial; });
  else if (name == "fp-avg") averages(reference::kFpAverage, &AverageReport::fp);
  else if (name == "ha-avg") averages(reference::kHaAverage, &AverageReport::ha);
  else if (name == "tc-avg") averages(reference::kTcAverage, &AverageReport::tc);
  else if (name == "Ak") constants('A', reference::kA, tolerance::kArtinFamily);
  else if (name == "Tk") constants('T', reference::kT, tolerance::kTk);
  else throw UnknownTable("unknown table '" + name + "' (1c, 4c, 5c, fp-avg, ha-avg, tc-avg, Ak, Tk)");
  return kOk;
}

/// Computes every uncached prime in [lo, hi]. Workers take whole primes; this
/// thread appends results in increasing p, so an interruption loses at most
/// the records not yet written.
inline int cmd_sweep(const RunConfig& cfg, Report& rep) {
  if (cfg.lo < 5 || cfg.hi < cfg.lo) throw DomainError("sweep needs 5 <= --min <= --max");
  Cache cache(cfg.cache_path);
  std::vector<u64> todo;
  u64 total = 0;
  for (u64 p : sieve_primes(cfg.hi)) {
    if (p < cfg.lo) continue;
    ++total;
    if (!cache.contains(p)) todo.push_back(p);
  }
  std::vector<std::optional<PrimeRecord>> done(todo.size());
  std::mutex mu;
  std::condition_variable cv;
  std::exception_ptr failure;
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(todo.size())));
  CountOptions opt = cfg.count_options();
  opt.threads = 1;
  std::thread pool([&] {
    try {
      parallel_for_chunks(todo.size(), workers, [&](std::size_t i) {
        PrimeRecord r = compute_record(todo[i], opt);
        std::lock_guard lock(mu);
        done[i] = std::move(r);
        cv.notify_one();
      });
    } catch (...) {
      std::lock_guard lock(mu);
      failure = std::current_exception();
      cv.notify_one();
    }
  });
  std::size_t written = 0;
  try {
    for (; written < todo.size(); ++written) {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return done[written].has_value() || failure; });
      if (!done[written]) break;
      PrimeRecord r = std::move(*done[written]);
      done[written].reset();
      lock.unlock();
      cache.append(r);
    }
  } catch (...) {
    pool.join();
    throw;
  }
  pool.join();
  if (failure) std::rethrow_exception(failure);
  rep.set("min", cfg.lo);
  rep.set("max", cfg.hi);
  rep.set("primes", total);
  rep.set("already_cached", total - todo.size());
  rep.set("computed", u64{written});
  rep.set("recovered_tail", cache.recovered_tail());
  return kOk;
}

inline int cmd_average(const RunConfig& cfg, Report& rep) {
  Cache cache(cfg.cache_path);
  const auto fetch = detail::cached_fetch(cache, cfg.count_options());
  const SmallPrimes conv = detail::choose_convention(cfg, fetch);
  const AverageConstants k = AverageConstants::compute(cfg.cutoff, cfg.threads);
  const AverageReport a = average_from(cfg.x, conv, fetch, k);
  rep.set("x", a.x);
  rep.set("pi_x", a.pi_x);
  rep.set("convention", std::string(to_string(conv)));
  rep.set("primes_used", a.primes_used);
  rep.set("li_x", a.li_x);
  struct Part {
    const char* name;
    const RationalGrid* avg;
    const RealGrid* pred;
  };
  for (const auto& part : {Part{"fp-avg", &a.fp, &a.fp_pred}, Part{"ha-avg", &a.ha, &a.ha_pred},
                           Part{"tc-avg", &a.tc, &a.tc_pred}}) {
    auto& t = rep.table(part.name, {"row", "col", "average", "predicted", "deviation"});
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double v = to_double((*part.avg)[i][j]);
        t.rows.push_back({detail::cond(i), detail::cond(j), v, (*part.pred)[i][j], v - (*part.pred)[i][j]});
      }
  }
  auto& s = rep.table("scalars", {"quantity", "average", "limit", "deviation"});
  auto row = [&](const char* q, const Rational& v, double limit) {
    const double d = to_double(v);
    s.rows.push_back({std::string(q), d, limit, d - limit});
  };
  row("sigma(n)/n - 3/2", a.sigma_excess, k.T1 - 1.5);
  row("G pr/any", a.g_pr, k.A1Z3Z2);
  row("G any/any", a.g_any, k.S);
  row("collision sum/(p-1)", a.w_collision, reference::kCollisionAverage);
  row("w printed/(p-1)", a.w_printed, reference::kCollisionAverage);
  row("w lower/(p-1)", a.w_lower, k.L);
  row("w upper/(p-1)", a.w_upper, k.U);
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, Report& rep) {
  CheckLog log;
  const auto opt = cfg.count_options();
  rep.set("suite", cfg.suite);
  if (cfg.suite == "small") {
    const u64 max_p = cfg.max_p ? cfg.max_p : 2000;
    rep.set("max_p", max_p);
    oracle_suite(log, max_p, cfg.threads);
    bounds_suite(log, max_p, {}, cfg.threads);
    structural_suite(log, max_p, 60);
  } else if (cfg.suite == "published") {
    tables_suite(log, opt);
    constants_suite(log, cfg.cutoff, cfg.threads);
    bounds_suite(log, 4, {reference::kTableModulus}, cfg.threads);
    Cache cache(cfg.cache_path);
    averages_suite(log, detail::cached_fetch(cache, opt), AverageConstants{});
  } else if (cfg.suite == "big") {
    const u64 max_p = cfg.max_p ? cfg.max_p : 100'000;
    rep.set("max_p", max_p);
    big_suite(log, max_p, cfg.threads);
  } else {
    throw DomainError("--suite must be small, published or big");
  }
  detail::add_checks(rep, log);
  return log.any_blocking() ? kVerificationFailed : kOk;
}

inline int cmd_constants(const RunConfig& cfg, Report& rep) {
  std::vector<std::string> names;
  if (cfg.which.empty() || cfg.which == "all") {
    for (int k = 1; k <= 7; ++k) names.push_back("A" + std::to_string(k));
    names.insert(names.end(), {"S", "A1Z3Z2", "U", "L"});
    for (int k = 1; k <= 7; ++k) names.push_back("T" + std::to_string(k));
  } else {
    names.push_back(cfg.which);
  }
  rep.set("prime_cutoff", cfg.cutoff);
  auto& t = rep.table("constants", {"id", "value", "tail_bound"});
  for (const auto& n : names) {
    const auto r = euler_product(n, cfg.cutoff, cfg.threads);
    t.rows.push_back({r.id, r.value, r.tail_bound});
  }
  return kOk;
}

inline int cmd_bigcheck(const RunConfig& cfg, Report& rep) {
  auto emit = [&](const BigCheckReport& r) {
    rep.set("id", r.id);
    rep.set("statement", r.statement);
    rep.set("applicable", r.applicable);
    rep.set("verified", r.verified);
    auto& s = rep.table("steps", {"step", "ok", "detail"});
    for (const auto& st : r.steps) s.rows.push_back({st.name, st.ok, st.detail});
    auto& w = rep.table("witness", {"name", "value"});
    for (const auto& [k, v] : r.witness) w.rows.push_back({k, v});
  };
  const std::string which = cfg.which.empty() ? "29-29" : cfg.which;
  if (which == "29-29") {
    const auto r = check_29_29(cfg.rounds);
    emit(r);
    return r.verified ? kOk : kVerificationFailed;
  }
  if (which == "odd-k") {
    const auto r = check_odd_k_prime(cfg.k, cfg.j, cfg.rounds);
    emit(r);
    return !r.applicable || r.verified ? kOk : kVerificationFailed;
  }
  if (which == "m-form") {
    const auto c = m_form_check(cfg.p, cfg.count_options());
    rep.set("p", c.p);
    rep.set("m", c.m);
    rep.set("q", c.q);
    rep.set("lambert_threshold", c.lambert_threshold);
    rep.set("holds", c.holds);
    if (c.F) {
      rep.set("F", *c.F);
      rep.set("sum_e_T", *c.identity);
      rep.set("identity_holds", c.identity_holds());
    }
    return !c.holds || c.identity_holds() ? kOk : kVerificationFailed;
  }
  throw DomainError("--which must be 29-29, odd-k or m-form");
}

// ---------------------------------------------------------------- entry

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Discrete-log fixed points, two-cycles and collisions modulo primes"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "pretty";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (default: DLCYCLES_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "pretty, csv or json")->check(CLI::IsMember({"pretty", "csv", "json"}));
  };
  auto cached = [&](CLI::App* sub) { sub->add_option("--cache", cfg.cache_path, "record cache (JSON lines)"); };

  auto* count = app.add_subcommand("count", "exact count matrices for one prime");
  count->add_option("--p", cfg.p, "the prime")->required();
  count->add_option("--eq", cfg.eq, "fp, ha, tc or all");
  count->add_flag("--oracle", cfg.oracle, "direct two-cycle count, cross-checked against the Smith reduction");
  count->add_option("--bucket-cap", cfg.bucket_cap, "largest collision bucket enumerated pairwise");
  common(count);

  auto* table = app.add_subcommand("table", "reproduce a published table");
  table->add_option("--name", cfg.table, "1c, 4c, 5c, fp-avg, ha-avg, tc-avg, Ak, Tk")->required();
  table->add_option("--cutoff", cfg.cutoff, "prime cutoff for Euler products");
  table->add_option("--convention", cfg.convention, "smallest prime in averages: auto, 2, 3 or 5");
  common(table);
  cached(table);

  auto* sweep = app.add_subcommand("sweep", "fill the cache for a prime range");
  sweep->add_option("--min", cfg.lo, "smallest prime")->default_val(5);
  sweep->add_option("--max", cfg.hi, "largest prime")->required();
  common(sweep);
  cached(sweep);

  auto* average = app.add_subcommand("average", "prime averages up to x");
  average->add_option("--x", cfg.x, "upper limit")->check(CLI::Range(u64{5}, u64{1} << 40));
  average->add_option("--convention", cfg.convention, "smallest prime: auto, 2, 3 or 5");
  average->add_option("--cutoff", cfg.cutoff, "prime cutoff for the limiting constants");
  common(average);
  cached(average);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite, "small, published or big")->check(CLI::IsMember({"small", "published", "big"}));
  verify->add_option("--max", cfg.max_p, "largest prime checked");
  verify->add_option("--cutoff", cfg.cutoff, "prime cutoff for Euler products");
  common(verify);
  cached(verify);

  auto* constants = app.add_subcommand("constants", "Euler-product constants");
  constants->add_option("--which", cfg.which, "A1..A7, S, A1Z3Z2, U, L, T1..T7 or all");
  constants->add_option("--cutoff", cfg.cutoff, "prime cutoff")->check(CLI::Range(u64{100}, u64{1} << 36));
  common(constants);

  auto* big = app.add_subcommand("bigcheck", "big-integer checks");
  big->add_option("--which", cfg.which, "29-29, odd-k or m-form");
  big->add_option("--k", cfg.k, "odd exponent for odd-k");
  big->add_option("--j", cfg.j, "base for odd-k");
  big->add_option("--p", cfg.p, "prime for m-form");
  big->add_option("--rounds", cfg.rounds, "Miller-Rabin rounds")->check(CLI::Range(40u, 10'000u));
  common(big);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  cfg.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Pretty;
  cfg.subcommand = app.get_subcommands().front()->get_name();

  Report rep;
  int status = kOk;
  try {
    if (cfg.subcommand == "count") status = cmd_count(cfg, rep);
    else if (cfg.subcommand == "table") status = cmd_table(cfg, rep);
    else if (cfg.subcommand == "sweep") status = cmd_sweep(cfg, rep);
    else if (cfg.subcommand == "average") status = cmd_average(cfg, rep);
    else if (cfg.subcommand == "verify") status = cmd_verify(cfg, rep);
    else if (cfg.subcommand == "constants") status = cmd_constants(cfg, rep);
    else status = cmd_bigcheck(cfg, rep);
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << "\n";
    return kCacheFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  render(rep, cfg.format, out);
  return status;
}

}  // namespace dlc::cli
