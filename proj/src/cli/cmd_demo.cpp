#include <algorithm>
#include <memory>
#include <ostream>

#include "commands.hpp"
#include "jsrec/matrix_io.hpp"
#include "jsrec/mmv.hpp"
#include "jsrec/recovery.hpp"

namespace jsrec::cli {

namespace {

struct DemoArgs {
  InstanceSpec spec = [] {
    InstanceSpec s;
    s.k = 10;
    return s;
  }();
  double snr_db = 40.0;
  bool noiseless = false;
  std::string ensemble = "zeromean";
  std::string export_dir;
  int rows = 15;
  std::string config;
};

void print_scores(std::ostream& out, const char* title, const std::map<int, double>& values, const SupportSet& S,
                  int rows) {
  std::vector<std::pair<int, double>> sorted(values.begin(), values.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
  out << title << '\n' << "  index      score  in_support\n";
  const int shown = std::min(rows, static_cast<int>(sorted.size()));
  for (int i = 0; i < shown; ++i) {
    const auto& [j, v] = sorted[static_cast<std::size_t>(i)];
    char line[80];
    std::snprintf(line, sizeof line, "  %5d  %9.3e  %s\n", j + 1, v, S.contains(j) ? "yes" : "no");
    out << line;
  }
  if (shown < static_cast<int>(sorted.size())) out << "  ... " << sorted.size() - shown << " more\n";
}

}  // namespace

Command add_demo(CLI::App& parent) {
  auto a = std::make_shared<DemoArgs>();
  CLI::App* sub = parent.add_subcommand("demo", "Solve one seeded instance with every algorithm");
  sub->add_option("--m", a->spec.m, "Measurements")->capture_default_str();
  sub->add_option("--n", a->spec.n, "Ambient dimension")->capture_default_str();
  sub->add_option("--k", a->spec.k, "Sparsity")->capture_default_str();
  sub->add_option("--r", a->spec.r, "Snapshots")->capture_default_str();
  sub->add_option("--snr-db", a->snr_db, "SNR in dB")->capture_default_str();
  sub->add_flag("--noiseless", a->noiseless, "No measurement noise");
  sub->add_option("--ensemble", a->ensemble, "zeromean or unitmean")
      ->capture_default_str()
      ->check(CLI::IsMember({"zeromean", "unitmean"}));
  sub->add_option("--seed", a->spec.seed, "Instance seed")->capture_default_str();
  sub->add_option("--rows", a->rows, "Rows shown per score table")->capture_default_str();
  sub->add_option("--export", a->export_dir, "Write A.csv, X.csv, Y.csv and instance.txt here");
  add_config_option(*sub, a->config);

  Command cmd;
  cmd.app = sub;
  cmd.run = [a, sub](std::ostream& out, std::ostream&) {
    apply_config(*sub, a->config);
    InstanceSpec spec = a->spec;
    spec.ensemble = parse_ensemble(a->ensemble);
    if (a->noiseless) spec.snr_db.reset();
    else spec.snr_db = a->snr_db;
    const NoisyInstance inst = generate_instance(spec);
    if (!a->export_dir.empty()) io::export_instance(a->export_dir, spec, inst);

    out << "instance: m=" << spec.m << " n=" << spec.n << " k=" << spec.k << " r=" << spec.r
        << " ensemble=" << ensemble_name(spec.ensemble) << " seed=" << spec.seed;
    out << " snr_db=" << (spec.snr_db ? fmt("%g", *spec.snr_db) : std::string("none")) << '\n';
    out << "true support (1-based): " << inst.S.to_string_one_based() << "\n\n";

    const Matrix& A = inst.A.entries;
    std::map<std::string, SupportEstimate> estimates;
    for (const char* tag : {"cs_music_optimized", "cs_music", "sa_music", "cs_music+ssomp", "cs_music+thresh2", "somp",
                            "ssomp", "thresh2", "music"}) {
      const Algorithm algo = parse_algorithm(tag);
      char head[40];
      std::snprintf(head, sizeof head, "%-20s", algo.name().c_str());
      out << head;
      try {
        SupportEstimate est = run_algorithm(algo, A, inst.Y, spec.k);
        const int missed = support_distance(inst.S, est.support);
        out << (missed == 0 ? "exact   " : "missed " + std::to_string(missed)) << ' '
            << est.support.to_string_one_based() << '\n';
        estimates.emplace(algo.name(), std::move(est));
      } catch (const std::exception& e) {
        out << "error   " << e.what() << '\n';
      }
    }
    out << '\n';
    if (auto it = estimates.find("cs_music"); it != estimates.end() && !it->second.criterion_values.empty())
      print_scores(out, "cs_music generalized MUSIC eta (smallest first):", it->second.criterion_values, inst.S, a->rows);
    if (auto it = estimates.find("cs_music_optimized"); it != estimates.end() && !it->second.fit_values.empty())
      print_scores(out, "cs_music_optimized subspace fitting zeta over step-1 candidates:", it->second.fit_values,
                   inst.S, a->rows);
    return 0;
  };
  return cmd;
}

}  // namespace jsrec::cli
