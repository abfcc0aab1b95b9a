#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <utility>

#include "commands.hpp"
#include "jsrec/asymptotics.hpp"
#include "jsrec/error.hpp"

namespace jsrec::cli {

namespace {

namespace as = jsrec::asymptotics;

using Row = std::vector<std::pair<std::string, std::string>>;

struct BoundsArgs {
  double alpha = 0.5;
  double gamma = 0.5;
  double x = 1.0;
  int k = 10;
  int n = 100;
  int r = 1;
  double delta = 0.0;
  std::string regime = "fixed";
  std::optional<double> regime_alpha;
  double epsilon = 0.1;
  double rho = 0.4;
  std::optional<double> snr;
  std::optional<double> snr_db;
  std::vector<double> kappa;
  double sigma_w = 1.0;
  double mi_rate = 0.0;
  double eps = 0.5;
  std::string sweep;
  std::string output;
  std::string config;
};

struct Topic {
  std::string name;
  std::string help;
  std::vector<std::string> options;  // long names exposed by this topic
  std::function<Row(const BoundsArgs&)> eval;
};

as::BoundInputs inputs_of(const BoundsArgs& a) {
  as::BoundInputs in;
  in.epsilon = a.epsilon;
  in.rho = a.rho;
  in.alpha = a.alpha;
  in.r = a.r;
  if (a.snr && a.snr_db) throw precondition_error("give either --snr or --snr-db, not both");
  in.snr = a.snr ? *a.snr : a.snr_db ? std::pow(10.0, *a.snr_db / 10.0) : 10.0;
  in.kappa = a.kappa;
  in.sigma_w = a.sigma_w;
  return in;
}

std::vector<Topic> topics() {
  return {
      {"F", "F(alpha), the normalized first moment of the lowest alpha-mass of the quarter-circle law", {"alpha"},
       [](const BoundsArgs& a) { return Row{{"F", fmt("%.6f", as::big_F(a.alpha))}}; }},
      {"t1", "t1(alpha), the matched-mass quantile", {"alpha"},
       [](const BoundsArgs& a) { return Row{{"t1", fmt("%.6f", as::t1_of_alpha(a.alpha))}}; }},
      {"somp", "Measurements needed by subspace S-OMP to find k - r support indices",
       {"k", "n", "r", "delta", "regime", "regime-alpha"},
       [](const BoundsArgs& a) {
         as::SompRegime regime;
         if (a.regime == "fixed") regime = as::SompRegime::fixed_r;
         else if (a.regime == "proportional") regime = as::SompRegime::proportional_r;
         else throw precondition_error("regime must be 'fixed' or 'proportional'");
         return Row{{"m_min", fmt("%.3f", as::somp_sample_bound(a.k, a.n, a.r, a.delta, regime, a.regime_alpha))}};
       }},
      {"ml-sufficient", "Sufficient SNR and sampling-rate conditions for ML support recovery",
       {"epsilon", "rho", "alpha", "r", "snr", "snr-db"},
       [](const BoundsArgs& a) {
         const auto res = as::ml_sufficient(inputs_of(a));
         Row row{{"snr_ok", res.snr_ok ? "true" : "false"},
                 {"rho_threshold", fmt("%.6f", res.rho_threshold)},
                 {"satisfied", res.satisfied ? "true" : "false"}};
         if (res.note.empty()) row.emplace_back("maximizer", fmt("%.6f", res.maximizer));
         else row.emplace_back("note", res.note);
         return row;
       }},
      {"ml-necessary", "Necessary sampling rate for ML support recovery",
       {"epsilon", "alpha", "r", "kappa", "sigma-w", "mi-rate"},
       [](const BoundsArgs& a) {
         as::BoundInputs in = inputs_of(a);
         if (in.kappa.empty()) in.kappa.assign(static_cast<std::size_t>(a.r), 1.0);
         return Row{{"rho_min", fmt("%.6f", as::ml_necessary_rho(in, a.mi_rate))}};
       }},
      {"chi", "Chernoff bounds on the chi-squared tails", {"r", "eps"},
       [](const BoundsArgs& a) {
         const auto b = as::chi_tail_bounds(a.r, a.eps);
         return Row{{"upper", fmt("%.6e", b.upper)}, {"lower", fmt("%.6e", b.lower)}};
       }},
      {"mp", "Marchenko-Pastur density, CDF and partial first moment", {"gamma", "x"},
       [](const BoundsArgs& a) {
         const as::MpMeasure mp(a.gamma);
         return Row{{"density", fmt("%.6f", mp.density(a.x))},
                    {"cdf", fmt("%.6f", mp.cdf(a.x))},
                    {"first_moment", fmt("%.6f", mp.first_moment(a.x))}};
       }},
      {"lss", "Limit of the sum of the r smallest squared singular values over k, and its lower bound",
       {"gamma", "alpha"},
       [](const BoundsArgs& a) {
         return Row{{"limit", fmt("%.6f", as::lower_singular_sum_limit(a.gamma, a.alpha))},
                    {"bound", fmt("%.6f", as::lower_singular_sum_bound(a.gamma, a.alpha))}};
       }},
      {"entropy", "Binary entropy h(epsilon) and the pair entropy h(epsilon, alpha), in nats", {"epsilon", "alpha"},
       [](const BoundsArgs& a) {
         return Row{{"h_epsilon", fmt("%.12f", as::binary_entropy(a.epsilon))},
                    {"h_pair", fmt("%.12f", as::entropy_pair(a.epsilon, a.alpha))}};
       }},
  };
}

// Registers a long option by name on `sub`, bound into `a`.
void add_named_option(CLI::App& sub, const std::string& name, BoundsArgs& a) {
  const std::string flag = "--" + name;
  if (name == "alpha") sub.add_option(flag, a.alpha, "Fractional distortion / mass")->capture_default_str();
  else if (name == "gamma") sub.add_option(flag, a.gamma, "sqrt(k/m), in (0, 1]")->capture_default_str();
  else if (name == "x") sub.add_option(flag, a.x, "Evaluation point")->capture_default_str();
  else if (name == "k") sub.add_option(flag, a.k, "Sparsity")->capture_default_str();
  else if (name == "n") sub.add_option(flag, a.n, "Ambient dimension")->capture_default_str();
  else if (name == "r") sub.add_option(flag, a.r, "Snapshots / degrees of freedom")->capture_default_str();
  else if (name == "delta") sub.add_option(flag, a.delta, "Slack delta >= 0 (0 = limit)")->capture_default_str();
  else if (name == "regime") sub.add_option(flag, a.regime, "fixed or proportional")->capture_default_str();
  else if (name == "regime-alpha") sub.add_option(flag, a.regime_alpha, "alpha for the proportional regime (default r/k)");
  else if (name == "epsilon") sub.add_option(flag, a.epsilon, "Sparsity ratio k/n")->capture_default_str();
  else if (name == "rho") sub.add_option(flag, a.rho, "Sampling ratio m/n")->capture_default_str();
  else if (name == "snr") sub.add_option(flag, a.snr, "Linear SNR (default 10)");
  else if (name == "snr-db") sub.add_option(flag, a.snr_db, "SNR in dB");
  else if (name == "kappa") sub.add_option(flag, a.kappa, "Eigenvalue bounds, comma-separated (default all 1)")->delimiter(',');
  else if (name == "sigma-w") sub.add_option(flag, a.sigma_w, "Noise standard deviation")->capture_default_str();
  else if (name == "mi-rate") sub.add_option(flag, a.mi_rate, "I(X;Y|S)/n supplied by the caller")->capture_default_str();
  else if (name == "eps") sub.add_option(flag, a.eps, "Relative deviation in (0, 1)")->capture_default_str();
}

double* sweep_target(BoundsArgs& a, const std::string& name) {
  static const std::map<std::string, double BoundsArgs::*> targets{
      {"alpha", &BoundsArgs::alpha}, {"gamma", &BoundsArgs::gamma},   {"x", &BoundsArgs::x},
      {"delta", &BoundsArgs::delta}, {"epsilon", &BoundsArgs::epsilon}, {"rho", &BoundsArgs::rho},
      {"sigma-w", &BoundsArgs::sigma_w}, {"mi-rate", &BoundsArgs::mi_rate}, {"eps", &BoundsArgs::eps}};
  const auto it = targets.find(name);
  return it == targets.end() ? nullptr : &(a.*(it->second));
}

// NAME=LO:HI:COUNT; integer parameters k, n, r are rounded.
struct Sweep {
  std::string name;
  double lo = 0, hi = 0;
  int count = 0;
};

Sweep parse_sweep(const std::string& text) {
  Sweep s;
  const auto eq = text.find('=');
  const auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
  const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos)
    throw precondition_error("sweep must look like NAME=LO:HI:COUNT");
  s.name = text.substr(0, eq);
  try {
    s.lo = std::stod(text.substr(eq + 1, c1 - eq - 1));
    s.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    s.count = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw precondition_error("sweep bounds must be numbers: " + text);
  }
  if (s.count < 1) throw precondition_error("sweep COUNT must be at least 1");
  return s;
}

void set_swept(BoundsArgs& a, const std::string& name, double v) {
  if (double* p = sweep_target(a, name)) *p = v;
  else if (name == "k") a.k = static_cast<int>(std::lround(v));
  else if (name == "n") a.n = static_cast<int>(std::lround(v));
  else if (name == "r") a.r = static_cast<int>(std::lround(v));
  else if (name == "snr") a.snr = v;
  else if (name == "snr-db") a.snr_db = v;
  else if (name == "regime-alpha") a.regime_alpha = v;
  else throw precondition_error("parameter '" + name + "' cannot be swept");
}

int emit(const Topic& topic, const BoundsArgs& args, std::ostream& out) {
  if (args.sweep.empty()) {
    const Row row = topic.eval(args);
    std::size_t width = 0;
    for (const auto& [k, v] : row) width = std::max(width, k.size());
    // Single-entry results stay compact ("F=1.000000"); longer ones align.
    for (const auto& [k, v] : row) out << k << std::string(row.size() > 1 ? width - k.size() : 0, ' ') << '=' << v << '\n';
    return 0;
  }
  const Sweep sw = parse_sweep(args.sweep);
  if (std::find(topic.options.begin(), topic.options.end(), sw.name) == topic.options.end())
    throw precondition_error("topic " + topic.name + " has no parameter '" + sw.name + "'");
  std::ofstream file;
  std::ostream* os = &out;
  if (!args.output.empty() && args.output != "-") {
    file.open(args.output);
    if (!file) throw std::runtime_error("cannot open " + args.output + " for writing");
    os = &file;
  }
  BoundsArgs a = args;
  for (int i = 0; i < sw.count; ++i) {
    const double v = sw.count == 1 ? sw.lo : sw.lo + (sw.hi - sw.lo) * i / (sw.count - 1);
    set_swept(a, sw.name, v);
    const Row row = topic.eval(a);
    if (i == 0) {
      *os << sw.name;
      for (const auto& [k, val] : row) *os << ',' << k;
      *os << '\n';
    }
    *os << fmt("%.6g", v);
    for (const auto& [k, val] : row) *os << ',' << val;
    *os << '\n';
  }
  os->flush();
  if (!*os) throw std::runtime_error("failed writing sweep output");
  return 0;
}

}  // namespace

Command add_bounds(CLI::App& parent) {
  CLI::App* sub = parent.add_subcommand("bounds", "Evaluate sample-count and information-theoretic thresholds");
  sub->require_subcommand(1);

  struct TopicCommand {
    Topic topic;
    CLI::App* app;
    std::shared_ptr<BoundsArgs> args;
  };
  auto entries = std::make_shared<std::vector<TopicCommand>>();
  for (auto& topic : topics()) {
    auto args = std::make_shared<BoundsArgs>();
    CLI::App* t = sub->add_subcommand(topic.name, topic.help);
    for (const auto& name : topic.options) add_named_option(*t, name, *args);
    t->add_option("--sweep", args->sweep, "CSV sweep NAME=LO:HI:COUNT over one parameter");
    t->add_option("-o,--output", args->output, "Sweep CSV path (default stdout)");
    add_config_option(*t, args->config);
    entries->push_back({std::move(topic), t, args});
  }

  Command cmd;
  cmd.app = sub;
  cmd.run = [sub, entries](std::ostream& out, std::ostream&) {
    for (auto& e : *entries) {
      if (!sub->got_subcommand(e.app)) continue;
      apply_config(*e.app, e.args->config);
      return emit(e.topic, *e.args, out);
    }
    throw precondition_error("bounds needs a topic");
  };
  return cmd;
}

}  // namespace jsrec::cli
