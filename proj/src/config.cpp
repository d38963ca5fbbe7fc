#include "quasihelm/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace quasihelm {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  KeyValueConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw ConfigError("empty config key");
  values_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const {
  used_[key] = true;
  return values_.count(key) > 0;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  used_[key] = true;
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  used_[key] = true;
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: " + it->second);
  }
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
  double v = get_double(key, double(fallback));
  long l = std::lround(v);
  if (std::abs(v - l) > 1e-9)
    throw ConfigError("config key '" + key + "': expected an integer");
  return l;
}

std::vector<double> KeyValueConfig::get_double_list(
    const std::string& key, std::vector<double> fallback) const {
  used_[key] = true;
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': bad list entry: " + item);
    }
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

std::string KeyValueConfig::echo() const {
  std::ostringstream os;
  for (const auto& [k, v] : values_) os << k << " = " << v << "\n";
  return os.str();
}

namespace {

PeriodicCoefficient2D load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coefficient table: " + path);
  std::vector<double> values;
  int cols = -1, rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string item;
    int c = 0;
    while (std::getline(ss, item, ',')) {
      values.push_back(std::stod(trim(item)));
      ++c;
    }
    if (cols < 0) cols = c;
    if (c != cols) throw ConfigError("ragged coefficient table: " + path);
    ++rows;
  }
  return tabulated_coefficient(std::move(values), rows, cols);
}

MediumSpec build_medium(const KeyValueConfig& kv) {
  CutVector theta = paper_cut_vector();
  if (kv.has("theta1") || kv.has("theta2"))
    theta = CutVector(kv.get_double("theta1", 0.0), kv.get_double("theta2", 0.0));
  else if (kv.has("theta_angle"))
    theta = CutVector::from_angle(kv.get_double("theta_angle", 0.0));

  std::string name = kv.get_string("medium", "paper-trig");
  MediumSpec medium;
  if (name == "paper-trig") {
    medium = paper_medium();
    medium.theta = theta;
  } else if (name == "constant") {
    medium = constant_medium(kv.get_double("mu", 1.0), kv.get_double("rho", 1.0),
                             theta, kv.get_double("a", 1.0));
  } else if (name == "tabulated") {
    medium.mu_p = load_table(kv.get_string("mu_table_file", ""));
    medium.rho_p = load_table(kv.get_string("rho_table_file", ""));
    medium.theta = theta;
    medium.source = [](double) { return 0.0; };
  } else {
    throw ConfigError("unknown medium preset: " + name);
  }
  medium.a = kv.get_double("a", medium.a);

  std::string interior = kv.get_string("interior", name == "paper-trig" ? "steps"
                                                                        : "none");
  if (interior == "steps") {
    medium.mu_i = step_interior_mu();
    medium.rho_i = step_interior_rho();
  } else if (interior == "none") {
    if (name != "constant") {
      medium.mu_i = PiecewiseConstant{};
      medium.rho_i = PiecewiseConstant{};
    }
  } else {
    throw ConfigError("unknown interior preset: " + interior);
  }

  std::string source = kv.get_string("source", name == "paper-trig" ? "paper"
                                                                    : "none");
  if (source == "paper")
    medium.source = paper_source();
  else if (source == "none")
    medium.source = [](double) { return 0.0; };
  else
    throw ConfigError("unknown source preset: " + source);
  return medium;
}

}  // namespace

RunConfig build_run_config(ExperimentKind kind, const KeyValueConfig& kv) {
  RunConfig rc{.kind = kind,
               .medium = build_medium(kv),
               .omega = Frequency(
                   Complex(kv.get_double("omega_re", 8.0),
                           kv.get_double("omega_im", 0.25)))};

  std::string method = kv.get_string("method", "quasi1d");
  if (method == "quasi1d")
    rc.pipeline.method = Method::quasi1d;
  else if (method == "2d")
    rc.pipeline.method = Method::two_d;
  else
    throw ConfigError("method must be 'quasi1d' or '2d'");

  rc.pipeline.h = kv.get_double("h", 1.0 / 32);
  rc.pipeline.h_theta = kv.get_double("h_theta", 0.0);
  rc.pipeline.order = static_cast<int>(kv.get_long("order", 1));
  rc.pipeline.L_cells = kv.get_long("L_cells", 4);
  rc.pipeline.quasi1d.fresh_cell_solves_at_quadrature =
      kv.get_long("fresh_quadrature_solves", 0) != 0;

  std::string phi = kv.get_string("phi", "one");
  if (phi == "one")
    rc.pipeline.phi = nullptr;
  else if (phi == "cos")
    rc.pipeline.phi = [](double s) { return std::cos(2.0 * M_PI * s); };
  else
    throw ConfigError("phi must be 'one' or 'cos'");

  rc.out_dir = kv.get_string("out_dir", ".");
  rc.h_list = kv.get_double_list(
      "h_list", {1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256});
  rc.n_samples = static_cast<int>(kv.get_long("n_samples", 256));
  rc.trunc_target = kv.get_double("trunc_target", 1e-10);
  rc.h_ref = kv.get_double("h_ref", 5e-4);
  rc.band = kv.get_double("band", 0.05);
  rc.window = kv.get_double("window", 0.0);
  rc.export_samples = kv.get_long("samples", 2000);
  rc.export_field = kv.get_long("export_field", 0) != 0;
  rc.radius_ref = kv.get_double("radius_ref", 0.0);
  rc.fibrage_M = kv.get_double("M", 80.0);
  rc.fibrage_step = kv.get_double("step", 1e-2);

  if (!(rc.pipeline.h > 0.0)) throw ConfigError("h must be positive");
  auto unused = kv.unused_keys();
  if (!unused.empty()) {
    std::string joined;
    for (const auto& k : unused) joined += (joined.empty() ? "" : ", ") + k;
    throw ConfigError("unknown config keys: " + joined);
  }
  rc.echo = kv.echo();
  return rc;
}

}  // namespace quasihelm
