#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cfsqz/config.hpp"
#include "cfsqz/emit.hpp"
#include "cfsqz/presets.hpp"

namespace {

using namespace cfsqz;

// Writes through fn to stdout when path is "-", else to the named file.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

int count_flagged(const SpectrumSeries& series) {
  int n = 0;
  for (const SpectrumPoint& pt : series.points) {
    if (pt.status == PointStatus::AboveThreshold) ++n;
  }
  return n;
}

void note_flagged(const SpectrumSeries& series) {
  const int n = count_flagged(series);
  if (n > 0) {
    std::cerr << "cfsqz: note: " << n << " of " << series.points.size()
              << " points at or above threshold\n";
  }
}

void run_spectrum(const RunConfig& cfg) {
  SpectrumPoint pt;
  pt.axis_value = cfg.f_hz;
  const double omega = 2.0 * kPi * cfg.f_hz;
  pt.s_plus = closed_loop_spectrum(cfg.opo, cfg.feedback, omega, QuadratureSign::Plus);
  pt.s_minus = closed_loop_spectrum(cfg.opo, cfg.feedback, omega, QuadratureSign::Minus);
  if (cfg.detection) {
    pt.s_plus = detected_spectrum(pt.s_plus, *cfg.detection);
    pt.s_minus = detected_spectrum(pt.s_minus, *cfg.detection);
  }

  SpectrumSeries series;
  series.stage = cfg.detection ? SeriesStage::Detected : SeriesStage::ClosedLoop;
  series.axis = SeriesAxis::FrequencyHz;
  series.points.push_back(pt);
  series.params = cfg.snapshot();
  with_output(cfg.out, [&](std::ostream& out) { emit_series(series, cfg.format, out); });
}

void run_sweep_t2(const RunConfig& cfg) {
  SpectrumSeries series = sweep_transmissivity(cfg.opo, cfg.feedback,
                                               2.0 * kPi * cfg.f_hz,
                                               uniform_unit_grid(cfg.t2_grid));
  if (cfg.detection) series = apply_detection(series, *cfg.detection);
  series.params.extra = cfg.run_fields();
  note_flagged(series);
  with_output(cfg.out, [&](std::ostream& out) { emit_series(series, cfg.format, out); });
}

void run_sweep_freq(const RunConfig& cfg) {
  SpectrumSeries series = sweep_frequency(cfg.opo, cfg.feedback, cfg.f_min_hz,
                                          cfg.f_max_hz, cfg.n_points, cfg.detection,
                                          cfg.spacing);
  series.params.extra = cfg.run_fields();
  note_flagged(series);
  with_output(cfg.out, [&](std::ostream& out) { emit_series(series, cfg.format, out); });
}

void run_optimize(const RunConfig& cfg) {
  const EnhancementReport report = optimal_transmissivity(cfg.opo, cfg.feedback,
                                                          2.0 * kPi * cfg.f_hz,
                                                          cfg.baseline);
  with_output(cfg.out, [&](std::ostream& out) {
    emit_report(report, cfg.snapshot(), cfg.format, out);
  });
}

void run_threshold(const RunConfig& cfg) {
  const double x_star = oscillation_threshold(cfg.opo, cfg.feedback);
  with_output(cfg.out, [&](std::ostream& out) {
    emit_threshold(x_star, cfg.snapshot(), cfg.format, out);
  });
}

void run_reproduce(const std::string& preset, const std::string& out,
                   OutputFormat format) {
  const std::string dir = out == "-" ? "." : out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

  for (const NamedSeries& named : run_preset(preset)) {
    const std::string path =
        (std::filesystem::path(dir) /
         (named.id + (format == OutputFormat::Json ? ".json" : ".csv")))
            .string();
    write_series_file(named.series, format, path);
    std::cerr << "cfsqz: wrote " << path << " (" << named.series.points.size()
              << " points";
    const int flagged = count_flagged(named.series);
    if (flagged > 0) std::cerr << ", " << flagged << " above threshold";
    std::cerr << ")\n";
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"coherent-feedback control of optical squeezing: spectra, sweeps, and "
               "operating-point analysis"};
  // Zero subcommands is allowed so a config file's command key can drive the run.
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_override;
  std::string format_override;
  app.add_option("--config", config_path, "run configuration file (key = value lines)");
  app.add_option("--out", out_override,
                 "output file, '-' for stdout; output directory for reproduce");
  app.add_option("--format", format_override, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  double f = 0.0;
  double fmin = 0.0;
  double fmax = 0.0;
  int n = 0;
  int grid = 0;
  bool log_spacing = false;
  std::string baseline;
  std::string preset;

  CLI::App* sc_spectrum =
      app.add_subcommand("spectrum", "closed-loop spectrum at one frequency");
  CLI::Option* opt_f_spectrum =
      sc_spectrum->add_option("--f", f, "sideband frequency, Hz");

  CLI::App* sc_sweep_t2 =
      app.add_subcommand("sweep-t2", "spectrum versus CBS transmissivity");
  CLI::Option* opt_f_sweep_t2 =
      sc_sweep_t2->add_option("--f", f, "sideband frequency, Hz");
  CLI::Option* opt_grid = sc_sweep_t2->add_option("--grid", grid, "T2 grid size");

  CLI::App* sc_sweep_freq =
      app.add_subcommand("sweep-freq", "spectrum versus sideband frequency");
  CLI::Option* opt_fmin = sc_sweep_freq->add_option("--fmin", fmin, "lowest frequency, Hz");
  CLI::Option* opt_fmax = sc_sweep_freq->add_option("--fmax", fmax, "highest frequency, Hz");
  CLI::Option* opt_n = sc_sweep_freq->add_option("--n", n, "number of points");
  sc_sweep_freq->add_flag("--log", log_spacing, "logarithmic frequency spacing");

  CLI::App* sc_optimize =
      app.add_subcommand("optimize", "best CBS transmissivity for squeezing");
  CLI::Option* opt_f_optimize =
      sc_optimize->add_option("--f", f, "sideband frequency, Hz");
  CLI::Option* opt_baseline =
      sc_optimize->add_option("--baseline", baseline, "improvement reference")
          ->check(CLI::IsMember({"ideal", "same-loss"}));

  CLI::App* sc_threshold =
      app.add_subcommand("threshold", "closed-loop oscillation threshold pump strength");

  CLI::App* sc_reproduce =
      app.add_subcommand("reproduce", "write the series of a named preset study");
  CLI::Option* opt_preset =
      sc_reproduce->add_option("--preset", preset, "fig4, fig5, fig7b, or fig8");

  // Global options (--config/--out/--format) may also follow the subcommand.
  for (CLI::App* sc : {sc_spectrum, sc_sweep_t2, sc_sweep_freq, sc_optimize,
                       sc_threshold, sc_reproduce}) {
    sc->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cfsqz: error: " << e.what() << "\n";
    return 1;
  }

  RunConfig cfg;
  const bool have_config = !config_path.empty();
  if (have_config) cfg = load_config(config_path);

  if (sc_spectrum->parsed()) cfg.command = Command::Spectrum;
  if (sc_sweep_t2->parsed()) cfg.command = Command::SweepT2;
  if (sc_sweep_freq->parsed()) cfg.command = Command::SweepFreq;
  if (sc_optimize->parsed()) cfg.command = Command::Optimize;
  if (sc_threshold->parsed()) cfg.command = Command::Threshold;
  if (sc_reproduce->parsed()) cfg.command = Command::Reproduce;

  if (opt_f_spectrum->count() || opt_f_sweep_t2->count() || opt_f_optimize->count()) {
    cfg.f_hz = f;
  }
  if (opt_grid->count()) cfg.t2_grid = grid;
  if (opt_fmin->count()) cfg.f_min_hz = fmin;
  if (opt_fmax->count()) cfg.f_max_hz = fmax;
  if (opt_n->count()) cfg.n_points = n;
  if (log_spacing) cfg.spacing = GridSpacing::Log;
  if (opt_baseline->count()) {
    cfg.baseline = baseline == "same-loss" ? Baseline::SameLoopLoss
                                           : Baseline::UncontrolledIdeal;
  }
  if (opt_preset->count()) cfg.preset = preset;
  if (!out_override.empty()) cfg.out = out_override;
  if (!format_override.empty()) {
    cfg.format = format_override == "json" ? OutputFormat::Json : OutputFormat::Csv;
  }

  if (cfg.command == Command::Reproduce) {
    if (cfg.preset.empty()) {
      throw InvalidParameterError("reproduce requires --preset (or a preset config key)");
    }
    run_reproduce(cfg.preset, cfg.out, cfg.format);
    return 0;
  }

  if (!have_config) {
    throw InvalidParameterError(std::string(command_name(cfg.command)) +
                                " requires --config with the physics parameters");
  }
  cfg.preset.clear();
  cfg.validate();

  switch (cfg.command) {
    case Command::Spectrum: run_spectrum(cfg); break;
    case Command::SweepT2: run_sweep_t2(cfg); break;
    case Command::SweepFreq: run_sweep_freq(cfg); break;
    case Command::Optimize: run_optimize(cfg); break;
    case Command::Threshold: run_threshold(cfg); break;
    case Command::Reproduce: break;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ConfigParseError& e) {
    std::cerr << "cfsqz: config error: " << e.what() << "\n";
    return 1;
  } catch (const ThresholdError& e) {
    std::cerr << "cfsqz: threshold error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParameterError& e) {
    std::cerr << "cfsqz: error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "cfsqz: io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "cfsqz: error: " << e.what() << "\n";
    return 1;
  }
}
