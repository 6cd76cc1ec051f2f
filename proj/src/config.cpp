#include "cfsqz/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "cfsqz/emit.hpp"

namespace cfsqz {

namespace {

struct RawValue {
  int line = 0;
  std::string text;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const RawValue& v, const std::string& key) {
  const char* text = v.text.c_str();
  char* end = nullptr;
  const double value = std::strtod(text, &end);
  if (end == text || *end != '\0') {
    throw ConfigParseError(v.line, "value '" + v.text + "' for key '" + key +
                                       "' is not a number");
  }
  return value;
}

int parse_int(const RawValue& v, const std::string& key) {
  const char* text = v.text.c_str();
  char* end = nullptr;
  const long value = std::strtol(text, &end, 10);
  if (end == text || *end != '\0') {
    throw ConfigParseError(v.line, "value '" + v.text + "' for key '" + key +
                                       "' is not an integer");
  }
  return static_cast<int>(value);
}

template <typename T>
T parse_choice(const RawValue& v, const std::string& key,
               std::initializer_list<std::pair<const char*, T>> choices) {
  std::string valid;
  for (const auto& [name, value] : choices) {
    if (v.text == name) return value;
    if (!valid.empty()) valid += ", ";
    valid += name;
  }
  throw ConfigParseError(v.line, "value '" + v.text + "' for key '" + key +
                                     "' is not one of: " + valid);
}

// All recognized keys, in documentation order.
const char* const kKnownKeys[] = {
    "T1", "L1", "l",    "x",    "pump_sign", "T2",     "L2",       "la",
    "lb", "xi", "rho",  "eta",  "command",   "f",      "fmin",     "fmax",
    "n",  "grid", "spacing", "baseline", "preset", "out", "format",
};

const char* const kRequiredKeys[] = {"T1", "L1", "l", "x", "T2", "L2", "la", "lb"};

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::SweepT2: return "sweep-t2";
    case Command::SweepFreq: return "sweep-freq";
    case Command::Optimize: return "optimize";
    case Command::Threshold: return "threshold";
    case Command::Reproduce: return "reproduce";
  }
  return "spectrum";
}

const char* format_name(OutputFormat f) {
  return f == OutputFormat::Json ? "json" : "csv";
}

const char* spacing_name(GridSpacing s) {
  return s == GridSpacing::Log ? "log" : "linear";
}

const char* baseline_name(Baseline b) {
  return b == Baseline::SameLoopLoss ? "same-loss" : "ideal";
}

const char* pump_sign_name(PumpSign s) {
  return s == PumpSign::Negative ? "negative" : "positive";
}

void RunConfig::validate() const {
  opo.validate();
  feedback.validate();
  if (detection) detection->validate();
  if (!(f_hz > 0.0)) throw InvalidParameterError("f = " + format_g12(f_hz) +
                                                 " outside (0, inf)");
  if (!(f_min_hz > 0.0)) throw InvalidParameterError("fmin = " + format_g12(f_min_hz) +
                                                     " outside (0, inf)");
  if (!(f_max_hz > f_min_hz)) {
    throw InvalidParameterError("fmax = " + format_g12(f_max_hz) +
                                " must exceed fmin = " + format_g12(f_min_hz));
  }
  if (n_points < 2) {
    throw InvalidParameterError("n = " + std::to_string(n_points) + " outside [2, inf)");
  }
  if (t2_grid < 1) {
    throw InvalidParameterError("grid = " + std::to_string(t2_grid) +
                                " outside [1, inf)");
  }
  if (command == Command::Reproduce && preset.empty()) {
    throw InvalidParameterError("command reproduce requires a preset");
  }
  if (command != Command::Reproduce && !preset.empty()) {
    throw InvalidParameterError("preset is only valid with command reproduce");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::run_fields() const {
  std::vector<std::pair<std::string, std::string>> fields;
  fields.emplace_back("command", command_name(command));
  fields.emplace_back("fmin", format_g12(f_min_hz));
  fields.emplace_back("fmax", format_g12(f_max_hz));
  fields.emplace_back("n", std::to_string(n_points));
  fields.emplace_back("grid", std::to_string(t2_grid));
  fields.emplace_back("spacing", spacing_name(spacing));
  fields.emplace_back("baseline", baseline_name(baseline));
  if (!preset.empty()) fields.emplace_back("preset", preset);
  fields.emplace_back("out", out);
  fields.emplace_back("format", format_name(format));
  return fields;
}

ParamsSnapshot RunConfig::snapshot() const {
  ParamsSnapshot snap;
  snap.opo = opo;
  snap.feedback = feedback;
  snap.detection = detection;
  if (command != Command::SweepFreq) snap.fixed_frequency_hz = f_hz;
  snap.extra = run_fields();
  return snap;
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, RawValue> values;

  std::istringstream stream(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    const auto hash = raw_line.find('#');
    if (hash != std::string::npos) raw_line.erase(hash);
    const std::string line = trim(raw_line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigParseError(line_no, "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigParseError(line_no, "missing key before '='");
    if (value.empty()) {
      throw ConfigParseError(line_no, "missing value for key '" + key + "'");
    }

    bool known = false;
    for (const char* k : kKnownKeys) known = known || key == k;
    if (!known) throw ConfigParseError(line_no, "unknown key '" + key + "'");
    if (values.count(key)) {
      throw ConfigParseError(line_no, "duplicate key '" + key + "' (first on line " +
                                          std::to_string(values[key].line) + ")");
    }
    values[key] = RawValue{line_no, value};
  }

  std::string missing;
  for (const char* k : kRequiredKeys) {
    if (!values.count(k)) missing += missing.empty() ? k : std::string(", ") + k;
  }
  if (!missing.empty()) {
    throw ConfigParseError(0, "missing required keys: " + missing);
  }

  const auto take = [&](const char* key) -> std::optional<RawValue> {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  };

  RunConfig cfg;
  cfg.opo.T1 = parse_double(*take("T1"), "T1");
  cfg.opo.L1 = parse_double(*take("L1"), "L1");
  cfg.opo.l = parse_double(*take("l"), "l");
  cfg.opo.x = parse_double(*take("x"), "x");
  if (auto v = take("pump_sign")) {
    cfg.opo.pump_sign = parse_choice<PumpSign>(
        *v, "pump_sign",
        {{"positive", PumpSign::Positive}, {"negative", PumpSign::Negative}});
  }
  cfg.feedback.T2 = parse_double(*take("T2"), "T2");
  cfg.feedback.L2 = parse_double(*take("L2"), "L2");
  cfg.feedback.la = parse_double(*take("la"), "la");
  cfg.feedback.lb = parse_double(*take("lb"), "lb");

  const auto xi = take("xi");
  const auto rho = take("rho");
  const auto eta = take("eta");
  if (eta && (xi || rho)) {
    throw ConfigParseError(eta->line, "eta excludes xi and rho");
  }
  if (xi.has_value() != rho.has_value()) {
    const RawValue& present = xi ? *xi : *rho;
    throw ConfigParseError(present.line, "xi and rho must be given together");
  }
  if (eta) {
    cfg.detection = DetectionParams::from_efficiency(parse_double(*eta, "eta"));
  } else if (xi) {
    DetectionParams det;
    det.xi = parse_double(*xi, "xi");
    det.rho = parse_double(*rho, "rho");
    cfg.detection = det;
  }

  if (auto v = take("command")) {
    cfg.command = parse_choice<Command>(*v, "command",
                                        {{"spectrum", Command::Spectrum},
                                         {"sweep-t2", Command::SweepT2},
                                         {"sweep-freq", Command::SweepFreq},
                                         {"optimize", Command::Optimize},
                                         {"threshold", Command::Threshold},
                                         {"reproduce", Command::Reproduce}});
  }
  if (auto v = take("f")) cfg.f_hz = parse_double(*v, "f");
  if (auto v = take("fmin")) cfg.f_min_hz = parse_double(*v, "fmin");
  if (auto v = take("fmax")) cfg.f_max_hz = parse_double(*v, "fmax");
  if (auto v = take("n")) cfg.n_points = parse_int(*v, "n");
  if (auto v = take("grid")) cfg.t2_grid = parse_int(*v, "grid");
  if (auto v = take("spacing")) {
    cfg.spacing = parse_choice<GridSpacing>(
        *v, "spacing", {{"linear", GridSpacing::Linear}, {"log", GridSpacing::Log}});
  }
  if (auto v = take("baseline")) {
    cfg.baseline = parse_choice<Baseline>(
        *v, "baseline",
        {{"ideal", Baseline::UncontrolledIdeal}, {"same-loss", Baseline::SameLoopLoss}});
  }
  if (auto v = take("preset")) cfg.preset = v->text;
  if (auto v = take("out")) cfg.out = v->text;
  if (auto v = take("format")) {
    cfg.format = parse_choice<OutputFormat>(
        *v, "format", {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}});
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read of config file '" + path + "' failed");
  return parse_config(buffer.str());
}

}  // namespace cfsqz
