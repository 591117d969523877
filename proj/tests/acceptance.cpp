// Acceptance driver: one PASS/FAIL line per criterion, indented detail lines
// below it. Checks marked as known failures (published statements or values
// that do not hold) print FAIL but do not change the exit status; anything
// else failing exits 1.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include "dlcycles/cli.hpp"
#include "dlcycles/verify.hpp"

using namespace dlc;
namespace fs = std::filesystem;

namespace {

int blocking_total = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int number, const std::string& title, const CheckLog& log, double secs, const std::string& note = {}) {
  u64 checks = 0, failed_ids = 0, known_ids = 0;
  for (const auto& r : log.results()) {
    checks += r.checked;
    if (r.blocking()) ++failed_ids;
    else if (r.failed) ++known_ids;
  }
  const char* verdict = failed_ids ? "FAIL" : known_ids ? "FAIL (known only)" : "PASS";
  std::printf("[%s] %d. %s  (%llu checks, %.1f s)\n", verdict, number, title.c_str(),
              static_cast<unsigned long long>(checks), secs);
  for (const auto& r : log.results()) {
    if (r.failed == 0) continue;
    std::printf("      %-12s %s: %llu/%llu failed, first %s\n", r.blocking() ? "FAIL" : "FAIL (known)", r.id.c_str(),
                static_cast<unsigned long long>(r.failed), static_cast<unsigned long long>(r.checked),
                r.first_failure.c_str());
  }
  if (!note.empty()) std::printf("      %s\n", note.c_str());
  blocking_total += static_cast<int>(failed_ids);
  std::fflush(stdout);
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dlcycles");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) std::printf("      cli %s exited %d: %s\n", args[1].c_str(), code, err.str().c_str());
  return code;
}

}  // namespace

int main() {
  const unsigned threads = default_threads();
  std::printf("tolerances: average cell %.0e, A_k/S/A1Z3Z2 %.0e, T_k %.0e, U/L %.0e, T_1-3/2 %.0e, "
              "collision forms %.0e relative, big check %.0f s\n",
              tolerance::kAverageCell, tolerance::kArtinFamily, tolerance::kTk, tolerance::kUL,
              tolerance::kSigmaExcess, tolerance::kCollisionRelative, tolerance::kBigCheckSeconds);

  {
    const auto t0 = std::chrono::steady_clock::now();
    CheckLog log;
    tables_suite(log, {threads});
    report(1, "count tables at p = 100057 (observed cells exact, predicted cells as displayed)", log, seconds_since(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path cache_path = fs::temp_directory_path() / ("dlcycles-acceptance-" + std::to_string(::getpid()) + ".jsonl");
    fs::remove(cache_path);
    CheckLog log;
    const int sweep = run_cli({"sweep", "--min", "5", "--max", std::to_string(reference::kAverageX), "--cache",
                               cache_path.string(), "--threads", std::to_string(threads)});
    log.record("sweep", sweep == 0);
    Cache cache(cache_path);
    u64 recomputed = 0;
    const auto rep = averages_suite(
        log,
        [&](u64 p) {
          if (!cache.contains(p)) ++recomputed, cache.append(compute_record(p));
          return cache.at(p);
        },
        AverageConstants{});
    log.record("average:records-from-cache", recomputed == 0, std::to_string(recomputed) + " recomputed");
    char note[200];
    std::snprintf(note, sizeof note, "primes %llu of pi(x) = %llu; collision-sum average %.6f, printed w average %.6f",
                  static_cast<unsigned long long>(rep.primes_used), static_cast<unsigned long long>(rep.pi_x),
                  to_double(rep.w_collision), to_double(rep.w_printed));
    report(2, "average tables at x = 6143 from sweep + cache", log, seconds_since(t0), note);
    fs::remove(cache_path);
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    CheckLog log;
    constants_suite(log, 10'000'000, threads);
    report(3, "Euler-product constants at cutoff 1e7", log, seconds_since(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    CheckLog log;
    oracle_suite(log, 2000, threads);
    report(4, "direct = Smith two-cycle counts and exact identities, 5 <= p <= 2000", log, seconds_since(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    CheckLog log;
    bounds_suite(log, 10'000, {reference::kTableModulus}, threads);
    report(5, "theorem bounds for p <= 1e4 and p = 100057", log, seconds_since(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    CheckLog log;
    structural_suite(log, 10'000, 60);
    report(6, "collision forms, Jordan summation (q <= 60), variance forms", log, seconds_since(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    CheckLog log;
    big_suite(log, 100'000, threads);
    report(7, "big-integer example and m-form identity for p <= 1e5", log, seconds_since(t0));
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    CheckLog log;
    const CensusReport c = census_suite(log, 100'000, threads);
    const double n = static_cast<double>(c.primes);
    char note[400];
    std::snprintf(note, sizeof note,
                  "primes %llu (x/ln x = %.0f); fraction with p-1 having a factor > p^0.6687: %.4f; "
                  "E(p) <= p^0.3313: %.4f; E(p) < p^(2/3) ln^(0.767) p: %.4f; |F-(p-1)| > p^0.6: %.4f",
                  static_cast<unsigned long long>(c.primes), c.x_over_ln_x, c.large_factor / n, c.small_E / n,
                  c.E_below_two_thirds / n, c.var_exceed / n);
    report(8, "density census p <= 1e5 (reported, conditioned bounds checked)", log, seconds_since(t0), note);
  }

  std::printf("%s: %d unexpected failure(s)\n", blocking_total ? "FAILED" : "OK", blocking_total);
  return blocking_total ? 1 : 0;
}
