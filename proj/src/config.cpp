#include "pamlab/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pamlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

struct Entry {
  std::string value;
  int line;
};

class Binder {
 public:
  explicit Binder(std::map<std::string, Entry> entries)
      : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  template <typename F>
  void bind(const std::string& key, F&& parse) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return;
    parse(it->second);
    used_.insert(key);
  }

  void check_unused() const {
    for (const auto& [key, entry] : entries_)
      if (!used_.count(key))
        throw config_error("unknown config key '" + key + "'", entry.line,
                           key);
  }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

double parse_double(const Entry& e, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &pos);
  } catch (const std::exception&) {
    throw config_error("expected a number for '" + key + "'", e.line, key);
  }
  if (trim(e.value.substr(pos)).size() > 0)
    throw config_error("trailing characters after number for '" + key + "'",
                       e.line, key);
  return v;
}

long long parse_int(const Entry& e, const std::string& key) {
  const double v = parse_double(e, key);
  const long long i = static_cast<long long>(v);
  if (static_cast<double>(i) != v)
    throw config_error("expected an integer for '" + key + "'", e.line, key);
  return i;
}

std::vector<double> parse_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  std::istringstream is(e.value);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw config_error("expected a comma-separated number list for '" + key +
                             "'",
                         e.line, key);
    }
  }
  if (out.empty())
    throw config_error("empty list for '" + key + "'", e.line, key);
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw config_error("malformed section header", lineno, s);
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw config_error("expected 'key = value'", lineno, s);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty())
      throw config_error("empty key", lineno, s);
    const std::string full = section.empty() ? key : section + "." + key;
    if (entries.count(full))
      throw config_error("duplicate key '" + full + "'", lineno, full);
    entries[full] = Entry{value, lineno};
  }

  ExperimentConfig cfg;
  Binder b(std::move(entries));

  b.bind("run.command", [&](const Entry& e) { cfg.command = trim(e.value); });
  b.bind("params.family", [&](const Entry& e) {
    const std::string f = trim(e.value);
    if (f != "regular" && f != "rough")
      throw config_error("family must be regular|rough", e.line,
                         "params.family");
    cfg.family = f;
  });
  b.bind("params.d", [&](const Entry& e) {
    cfg.dim = static_cast<int>(parse_int(e, "params.d"));
  });
  b.bind("params.alpha",
         [&](const Entry& e) { cfg.alpha = parse_double(e, "params.alpha"); });
  b.bind("params.hurst",
         [&](const Entry& e) { cfg.hurst = parse_double(e, "params.hurst"); });
  b.bind("params.hurst0", [&](const Entry& e) {
    cfg.hurst0 = parse_double(e, "params.hurst0");
  });
  b.bind("params.window_a", [&](const Entry& e) {
    cfg.window_a = parse_double(e, "params.window_a");
  });
  b.bind("params.window_b", [&](const Entry& e) {
    cfg.window_b = parse_double(e, "params.window_b");
  });

  b.bind("grid.tau_max", [&](const Entry& e) {
    cfg.grid.tau_max = parse_double(e, "grid.tau_max");
  });
  b.bind("grid.xi_max", [&](const Entry& e) {
    cfg.grid.xi_max = parse_double(e, "grid.xi_max");
  });
  b.bind("grid.n_tau", [&](const Entry& e) {
    cfg.grid.n_tau = static_cast<int>(parse_int(e, "grid.n_tau"));
  });
  b.bind("grid.n_xi", [&](const Entry& e) {
    cfg.grid.n_xi = static_cast<int>(parse_int(e, "grid.n_xi"));
  });
  b.bind("grid.max_tensor_mb", [&](const Entry& e) {
    cfg.grid.max_tensor_bytes =
        static_cast<std::uint64_t>(parse_int(e, "grid.max_tensor_mb")) << 20;
  });
  b.bind("grid.k_max", [&](const Entry& e) {
    cfg.k_max = static_cast<int>(parse_int(e, "grid.k_max"));
  });
  b.bind("grid.tensor_nodes", [&](const Entry& e) {
    cfg.tensor_nodes = static_cast<int>(parse_int(e, "grid.tensor_nodes"));
  });

  b.bind("mc.draws", [&](const Entry& e) {
    cfg.draws = static_cast<int>(parse_int(e, "mc.draws"));
  });
  b.bind("mc.samples", [&](const Entry& e) {
    cfg.samples = static_cast<std::uint64_t>(parse_int(e, "mc.samples"));
  });
  b.bind("mc.seed", [&](const Entry& e) {
    cfg.seed = static_cast<std::uint64_t>(parse_int(e, "mc.seed"));
  });

  b.bind("experiment.t",
         [&](const Entry& e) { cfg.t = parse_double(e, "experiment.t"); });
  b.bind("experiment.x",
         [&](const Entry& e) { cfg.x = parse_double(e, "experiment.x"); });
  b.bind("experiment.u0",
         [&](const Entry& e) { cfg.u0_text = trim(e.value); });
  b.bind("experiment.order", [&](const Entry& e) {
    cfg.order = static_cast<int>(parse_int(e, "experiment.order"));
  });
  b.bind("experiment.h", [&](const Entry& e) {
    cfg.h_exp = parse_double(e, "experiment.h");
  });
  b.bind("experiment.n_steps", [&](const Entry& e) {
    cfg.n_steps = static_cast<int>(parse_int(e, "experiment.n_steps"));
  });
  b.bind("experiment.step0", [&](const Entry& e) {
    cfg.step0 = parse_double(e, "experiment.step0");
  });
  b.bind("experiment.pstar", [&](const Entry& e) {
    cfg.pstar = parse_double(e, "experiment.pstar");
  });
  b.bind("experiment.tail_m_lo", [&](const Entry& e) {
    cfg.tail_m_lo = static_cast<int>(parse_int(e, "experiment.tail_m_lo"));
  });
  b.bind("experiment.tail_m_hi", [&](const Entry& e) {
    cfg.tail_m_hi = static_cast<int>(parse_int(e, "experiment.tail_m_hi"));
  });
  b.bind("experiment.t0",
         [&](const Entry& e) { cfg.t0 = parse_double(e, "experiment.t0"); });
  b.bind("experiment.t_max", [&](const Entry& e) {
    cfg.t_max = parse_double(e, "experiment.t_max");
  });
  b.bind("experiment.box",
         [&](const Entry& e) { cfg.box = parse_double(e, "experiment.box"); });
  b.bind("experiment.beta", [&](const Entry& e) {
    cfg.beta = parse_double(e, "experiment.beta");
  });
  b.bind("experiment.c0",
         [&](const Entry& e) { cfg.c0 = parse_double(e, "experiment.c0"); });
  b.bind("experiment.moment_p", [&](const Entry& e) {
    cfg.moment_p = static_cast<int>(parse_int(e, "experiment.moment_p"));
  });
  b.bind("experiment.n_params", [&](const Entry& e) {
    cfg.n_params = static_cast<int>(parse_int(e, "experiment.n_params"));
  });
  b.bind("experiment.ladder", [&](const Entry& e) {
    cfg.ladder = parse_list(e, "experiment.ladder");
  });

  b.bind("io.out", [&](const Entry& e) { cfg.out_dir = trim(e.value); });
  b.bind("io.cache", [&](const Entry& e) { cfg.cache_path = trim(e.value); });

  b.check_unused();

  if (cfg.command.empty())
    throw config_error("missing required key 'run.command'", 0, "run.command");
  static const char* known[] = {"constants",     "kernel-check", "simplex-check",
                                "variance",      "simulate",     "converge",
                                "holder",        "tail"};
  bool ok = false;
  for (const char* k : known) ok = ok || cfg.command == k;
  if (!ok)
    throw config_error("unknown command '" + cfg.command + "'", 0,
                       "run.command");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw config_error("cannot open config file " + path, 0, "config");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace pamlab
