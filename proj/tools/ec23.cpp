// ec23: command-line front end over the C API (ec23.h) only.
//
// Subcommands: ap, conductor, torsion, search, isogeny-class, ledger,
// tables, graph.  Everything prints to stdout; failures go to stderr with
// the library's error text and the status code becomes the exit code.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "ec23.h"

namespace {

// owns a char* returned by the library
struct Str {
  char* s = nullptr;
  ~Str() { ec23_string_free(s); }
};

int die(ec23_status rc) {
  std::fprintf(stderr, "error: %s\n", ec23_last_error());
  return static_cast<int>(rc);
}

int write_text(const std::string& path, const char* text) {
  if (path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) {
    std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
    return 1;
  }
  std::fputs(text, f);
  std::fclose(f);
  return 0;
}

int run_ap(const std::string& curve, long bound) {
  ec23_curve* E = nullptr;
  if (auto rc = ec23_curve_parse(curve.c_str(), &E)) return die(rc);
  Str table;
  auto rc = ec23_ap_table(E, bound, &table.s);
  ec23_curve_free(E);
  if (rc) return die(rc);
  std::fputs(table.s, stdout);
  return 0;
}

int run_conductor(const std::string& curve) {
  ec23_curve* E = nullptr;
  if (auto rc = ec23_curve_parse(curve.c_str(), &E)) return die(rc);
  Str report;
  auto rc = ec23_reduction_report(E, &report.s);
  ec23_curve_free(E);
  if (rc) return die(rc);
  std::fputs(report.s, stdout);
  return 0;
}

int run_torsion(const std::string& curve) {
  ec23_curve* E = nullptr;
  if (auto rc = ec23_curve_parse(curve.c_str(), &E)) return die(rc);
  Str report;
  auto rc = ec23_torsion_report(E, &report.s);
  ec23_curve_free(E);
  if (rc) return die(rc);
  std::fputs(report.s, stdout);
  return 0;
}

int run_search(const std::string& conductor, const std::string& strategy,
               long effort, const std::string& base_str,
               const std::string& log_path) {
  ec23_ideal* n = nullptr;
  if (auto rc = ec23_ideal_parse(conductor.c_str(), &n)) return die(rc);
  ec23_curve* base = nullptr;
  if (!base_str.empty()) {
    if (auto rc = ec23_curve_parse(base_str.c_str(), &base)) {
      ec23_ideal_free(n);
      return die(rc);
    }
  }
  ec23_curve_list* found = nullptr;
  Str log;
  auto rc = ec23_search(n, strategy.c_str(), effort, base, &found,
                        log_path.empty() ? nullptr : &log.s);
  ec23_curve_free(base);
  ec23_ideal_free(n);
  if (rc) return die(rc);
  for (size_t i = 0; i < ec23_curve_list_size(found); ++i) {
    Str line;
    if (auto rc2 = ec23_curve_to_string(ec23_curve_list_get(found, i),
                                        &line.s)) {
      ec23_curve_list_free(found);
      return die(rc2);
    }
    std::printf("%s\n", line.s);
  }
  ec23_curve_list_free(found);
  if (!log_path.empty()) return write_text(log_path, log.s);
  return 0;
}

int run_isogeny_class(const std::string& curve, bool dot) {
  ec23_curve* E = nullptr;
  if (auto rc = ec23_curve_parse(curve.c_str(), &E)) return die(rc);
  ec23_class* G = nullptr;
  auto rc = ec23_isogeny_class(E, &G);
  ec23_curve_free(E);
  if (rc) return die(rc);
  Str text;
  rc = dot ? ec23_class_dot(G, &text.s) : ec23_class_summary(G, &text.s);
  ec23_class_free(G);
  if (rc) return die(rc);
  std::fputs(text.s, stdout);
  return 0;
}

int run_ledger(const std::string& dims) {
  Str report;
  if (auto rc = ec23_ledger_report(dims.c_str(), &report.s)) return die(rc);
  std::fputs(report.s, stdout);
  return 0;
}

int run_tables(const std::string& data) {
  ec23_dataset* D = nullptr;
  if (auto rc = ec23_dataset_read(data.c_str(), &D)) return die(rc);
  Str tables;
  auto rc = ec23_dataset_tables(D, &tables.s);
  ec23_dataset_free(D);
  if (rc) return die(rc);
  std::fputs(tables.s, stdout);
  return 0;
}

int run_graph(const std::string& data, const std::string& label,
              const std::string& dot_path) {
  ec23_dataset* D = nullptr;
  if (auto rc = ec23_dataset_read(data.c_str(), &D)) return die(rc);
  Str dot;
  auto rc = ec23_dataset_class_dot(D, label.c_str(), &dot.s);
  ec23_dataset_free(D);
  if (rc) return die(rc);
  return write_text(dot_path, dot.s);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic curves over Q[a]/(a^3 - a^2 + 1)"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string curve, conductor, strategy = "prescribed", base, log_path;
  std::string dims, data, label, dot_path;
  long bound = 100, effort = 1;
  bool dot = false;

  auto* ap = app.add_subcommand("ap", "trace of Frobenius at good primes");
  ap->add_option("--curve", curve, "curve [a1,a2,a3,a4,a6]")->required();
  ap->add_option("--bound", bound, "prime norm bound (default 100)");
  ap->callback([&] { exit_code = run_ap(curve, bound); });

  auto* cond = app.add_subcommand(
      "conductor", "conductor, minimal model and reduction types");
  cond->add_option("--curve", curve, "curve [a1,a2,a3,a4,a6]")->required();
  cond->callback([&] { exit_code = run_conductor(curve); });

  auto* tor = app.add_subcommand("torsion", "torsion subgroup and generators");
  tor->add_option("--curve", curve, "curve [a1,a2,a3,a4,a6]")->required();
  tor->callback([&] { exit_code = run_torsion(curve); });

  auto* sea = app.add_subcommand("search", "find curves of given conductor");
  sea->add_option("--conductor", conductor, "conductor ideal \"(g)\"")
      ->required();
  sea->add_option("--strategy", strategy,
                  "naive | family | twist | prescribed (default)")
      ->check(CLI::IsMember({"naive", "family", "twist", "prescribed"}));
  sea->add_option("--effort", effort,
                  "box radius (naive/family) or deepening rounds (prescribed)");
  sea->add_option("--base", base, "base curve to twist (strategy twist)");
  sea->add_option("--log", log_path, "write per-candidate effort records CSV");
  sea->callback(
      [&] { exit_code = run_search(conductor, strategy, effort, base, log_path); });

  auto* iso = app.add_subcommand("isogeny-class",
                                 "curves isogenous to a given curve");
  iso->add_option("--curve", curve, "curve [a1,a2,a3,a4,a6]")->required();
  iso->add_flag("--dot", dot, "emit DOT (degree 2 solid, 3 dashed)");
  iso->callback([&] { exit_code = run_isogeny_class(curve, dot); });

  auto* led = app.add_subcommand(
      "ledger", "Eisenstein/cuspidal/new dimensions from a level table");
  led->add_option("--dims", dims, "TSV: generator<TAB>norm<TAB>total_dim")
      ->required();
  led->callback([&] { exit_code = run_ledger(dims); });

  auto* tab = app.add_subcommand("tables", "summary tables for a dataset");
  tab->add_option("--data", data, "dataset TSV")->required();
  tab->callback([&] { exit_code = run_tables(data); });

  auto* gra = app.add_subcommand("graph", "DOT graph of one isogeny class");
  gra->add_option("--data", data, "dataset TSV")->required();
  gra->add_option("--class", label, "class label, e.g. 140a")->required();
  gra->add_option("--dot", dot_path, "output file (default stdout)");
  gra->callback([&] { exit_code = run_graph(data, label, dot_path); });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
