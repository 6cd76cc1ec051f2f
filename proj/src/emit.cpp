#include "cfsqz/emit.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace cfsqz {

namespace {

// Escapes a string as a JSON literal, quotes included.
std::string json_quote(const std::string& s) { return nlohmann::json(s).dump(); }

// Appends the physics parameters and run-level fields in the pinned order.
// render(key, value_text) receives the already-formatted value.
template <typename Render>
void render_params(const ParamsSnapshot& p, Render render) {
  render("T1", format_g12(p.opo.T1), false);
  render("L1", format_g12(p.opo.L1), false);
  render("l", format_g12(p.opo.l), false);
  render("x", format_g12(p.opo.x), false);
  render("pump_sign", p.opo.pump_sign == PumpSign::Negative ? "negative" : "positive",
         true);
  render("T2", format_g12(p.feedback.T2), false);
  render("L2", format_g12(p.feedback.L2), false);
  render("la", format_g12(p.feedback.la), false);
  render("lb", format_g12(p.feedback.lb), false);
  if (p.detection) {
    render("xi", format_g12(p.detection->xi), false);
    render("rho", format_g12(p.detection->rho), false);
    render("eta", format_g12(p.detection->eta()), false);
  }
  if (p.fixed_frequency_hz) {
    render("f", format_g12(*p.fixed_frequency_hz), false);
  }
  for (const auto& [key, value] : p.extra) {
    render(key, value, true);
  }
}

void emit_params_csv(const ParamsSnapshot& p, std::ostream& out) {
  render_params(p, [&](const std::string& key, const std::string& value, bool) {
    out << "# " << key << " = " << value << "\n";
  });
}

std::string params_json(const ParamsSnapshot& p, const char* indent) {
  std::ostringstream out;
  bool first = true;
  render_params(p, [&](const std::string& key, const std::string& value, bool is_string) {
    if (!first) out << ",";
    first = false;
    out << "\n" << indent << json_quote(key) << ": "
        << (is_string ? json_quote(value) : value);
  });
  return out.str();
}

// Number-or-null JSON field for possibly-NaN values.
std::string json_number(double v) { return std::isnan(v) ? "null" : format_g12(v); }

double db_or_nan(double s) {
  return (std::isfinite(s) && s > 0.0) ? to_db(s) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double quantize_g12(double v) {
  if (std::isnan(v)) return v;
  return std::strtod(format_g12(v).c_str(), nullptr);
}

const char* stage_name(SeriesStage s) {
  switch (s) {
    case SeriesStage::OpenLoop: return "open_loop";
    case SeriesStage::ClosedLoop: return "closed_loop";
    case SeriesStage::Detected: return "detected";
  }
  return "closed_loop";
}

const char* axis_name(SeriesAxis a) {
  switch (a) {
    case SeriesAxis::FrequencyHz: return "frequency_hz";
    case SeriesAxis::TransmissivityT2: return "transmissivity_t2";
    case SeriesAxis::PumpStrengthX: return "pump_strength_x";
  }
  return "frequency_hz";
}

const char* status_name(PointStatus s) {
  return s == PointStatus::AboveThreshold ? "above_threshold" : "ok";
}

SeriesStage stage_from_name(const std::string& name) {
  if (name == "open_loop") return SeriesStage::OpenLoop;
  if (name == "closed_loop") return SeriesStage::ClosedLoop;
  if (name == "detected") return SeriesStage::Detected;
  throw InvalidParameterError("unknown series stage '" + name + "'");
}

SeriesAxis axis_from_name(const std::string& name) {
  if (name == "frequency_hz") return SeriesAxis::FrequencyHz;
  if (name == "transmissivity_t2") return SeriesAxis::TransmissivityT2;
  if (name == "pump_strength_x") return SeriesAxis::PumpStrengthX;
  throw InvalidParameterError("unknown series axis '" + name + "'");
}

PointStatus status_from_name(const std::string& name) {
  if (name == "ok") return PointStatus::Ok;
  if (name == "above_threshold") return PointStatus::AboveThreshold;
  throw InvalidParameterError("unknown point status '" + name + "'");
}

void emit_series(const SpectrumSeries& series, OutputFormat format, std::ostream& out) {
  series.validate();
  if (format == OutputFormat::Csv) {
    out << "# cfsqz spectrum series\n";
    out << "# stage = " << stage_name(series.stage) << "\n";
    out << "# axis = " << axis_name(series.axis) << "\n";
    emit_params_csv(series.params, out);
    out << "axis_value,s_plus,s_minus,s_plus_db,s_minus_db,status\n";
    for (const SpectrumPoint& pt : series.points) {
      out << format_g12(pt.axis_value) << "," << format_g12(pt.s_plus) << ","
          << format_g12(pt.s_minus) << "," << format_g12(db_or_nan(pt.s_plus)) << ","
          << format_g12(db_or_nan(pt.s_minus)) << "," << status_name(pt.status) << "\n";
    }
    return;
  }

  out << "{\n";
  out << "  \"schema\": \"cfsqz-series-v1\",\n";
  out << "  \"stage\": \"" << stage_name(series.stage) << "\",\n";
  out << "  \"axis\": \"" << axis_name(series.axis) << "\",\n";
  out << "  \"params\": {" << params_json(series.params, "    ") << "\n  },\n";
  out << "  \"points\": [";
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const SpectrumPoint& pt = series.points[i];
    out << (i == 0 ? "" : ",") << "\n    {\"axis_value\": " << format_g12(pt.axis_value)
        << ", \"s_plus\": " << json_number(pt.s_plus)
        << ", \"s_minus\": " << json_number(pt.s_minus)
        << ", \"s_plus_db\": " << json_number(db_or_nan(pt.s_plus))
        << ", \"s_minus_db\": " << json_number(db_or_nan(pt.s_minus))
        << ", \"status\": \"" << status_name(pt.status) << "\"}";
  }
  out << "\n  ]\n}\n";
}

void emit_report(const EnhancementReport& report, const ParamsSnapshot& params,
                 OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Csv) {
    out << "# cfsqz enhancement report\n";
    emit_params_csv(params, out);
    out << "t2_star,s_minus_at_star,baseline_s_minus,improvement_db,improved\n";
    out << format_g12(report.t2_star) << "," << format_g12(report.s_minus_at_star) << ","
        << format_g12(report.baseline_s_minus) << "," << format_g12(report.improvement_db)
        << "," << (report.improved ? "true" : "false") << "\n";
    return;
  }

  out << "{\n";
  out << "  \"schema\": \"cfsqz-report-v1\",\n";
  out << "  \"params\": {" << params_json(params, "    ") << "\n  },\n";
  out << "  \"report\": {\n";
  out << "    \"t2_star\": " << format_g12(report.t2_star) << ",\n";
  out << "    \"s_minus_at_star\": " << format_g12(report.s_minus_at_star) << ",\n";
  out << "    \"baseline_s_minus\": " << format_g12(report.baseline_s_minus) << ",\n";
  out << "    \"improvement_db\": " << format_g12(report.improvement_db) << ",\n";
  out << "    \"improved\": " << (report.improved ? "true" : "false") << "\n";
  out << "  }\n}\n";
}

void emit_threshold(double x_threshold, const ParamsSnapshot& params, OutputFormat format,
                    std::ostream& out) {
  if (format == OutputFormat::Csv) {
    out << "# cfsqz oscillation threshold\n";
    emit_params_csv(params, out);
    out << "x_threshold\n";
    out << format_g12(x_threshold) << "\n";
    return;
  }

  out << "{\n";
  out << "  \"schema\": \"cfsqz-threshold-v1\",\n";
  out << "  \"params\": {" << params_json(params, "    ") << "\n  },\n";
  out << "  \"x_threshold\": " << format_g12(x_threshold) << "\n";
  out << "}\n";
}

SpectrumSeries read_series_json(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParameterError(std::string("series document is not valid JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != "cfsqz-series-v1") {
    throw InvalidParameterError("document is not a cfsqz-series-v1 object");
  }

  SpectrumSeries series;
  series.stage = stage_from_name(doc.at("stage").get<std::string>());
  series.axis = axis_from_name(doc.at("axis").get<std::string>());

  bool has_detection = false;
  DetectionParams det;
  for (const auto& [key, value] : doc.at("params").items()) {
    if (key == "T1") series.params.opo.T1 = value.get<double>();
    else if (key == "L1") series.params.opo.L1 = value.get<double>();
    else if (key == "l") series.params.opo.l = value.get<double>();
    else if (key == "x") series.params.opo.x = value.get<double>();
    else if (key == "pump_sign")
      series.params.opo.pump_sign = value.get<std::string>() == "negative"
                                        ? PumpSign::Negative
                                        : PumpSign::Positive;
    else if (key == "T2") series.params.feedback.T2 = value.get<double>();
    else if (key == "L2") series.params.feedback.L2 = value.get<double>();
    else if (key == "la") series.params.feedback.la = value.get<double>();
    else if (key == "lb") series.params.feedback.lb = value.get<double>();
    else if (key == "xi") { det.xi = value.get<double>(); has_detection = true; }
    else if (key == "rho") { det.rho = value.get<double>(); has_detection = true; }
    else if (key == "eta") { /* derived from xi and rho */ }
    else if (key == "f") series.params.fixed_frequency_hz = value.get<double>();
    else series.params.extra.emplace_back(key, value.get<std::string>());
  }
  if (has_detection) series.params.detection = det;

  for (const auto& item : doc.at("points")) {
    SpectrumPoint pt;
    pt.axis_value = item.at("axis_value").get<double>();
    pt.s_plus = item.at("s_plus").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                            : item.at("s_plus").get<double>();
    pt.s_minus = item.at("s_minus").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                              : item.at("s_minus").get<double>();
    pt.status = status_from_name(item.at("status").get<std::string>());
    series.points.push_back(pt);
  }
  series.validate();
  return series;
}

void write_series_file(const SpectrumSeries& series, OutputFormat format,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_series(series, format, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace cfsqz
