// miseal: command-line front end for the minutiae separation library.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "miseal/deletion.hpp"
#include "miseal/dependence.hpp"
#include "miseal/errors.hpp"
#include "miseal/field_model.hpp"
#include "miseal/io.hpp"
#include "miseal/miseal_sampler.hpp"
#include "miseal/patches.hpp"
#include "miseal/pcf.hpp"
#include "miseal/regression.hpp"
#include "miseal/rng.hpp"
#include "miseal/simulation_study.hpp"
#include "miseal/strauss_sampler.hpp"
#include "miseal/synthetic_fields.hpp"

namespace {

using namespace miseal;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

// Raised for flag combinations CLI11 cannot express on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

// Writes through `fn` to `path`, or to stdout when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  auto out = open_out(path);
  fn(out);
  if (!out) throw DataError("failed writing " + path);
}

RegionOfInterest load_roi(const std::string& path) { return to_roi(read_field_grid(path)); }

// Mask from --mask, else the full raster of `geometry`.
RegionOfInterest roi_or_full(const std::string& mask_path, const GridGeometry& geometry) {
  if (!mask_path.empty()) {
    auto roi = load_roi(mask_path);
    if (!(roi.geometry() == geometry)) throw GeometryMismatch("mask and field rasters differ in geometry");
    return roi;
  }
  return RegionOfInterest::full(geometry.width, geometry.height);
}

PointPattern load_pattern(const std::string& path, const RegionOfInterest& roi) {
  return make_pattern(read_points(path).points, roi);
}

// ---- shared sampler flags ---------------------------------------------------

struct SamplerFlags {
  Priors priors;
  std::optional<double> p_w;
  ProposalSettings proposal;
  InteractionRadii radii;
  std::size_t burn_in = 10000;
  std::size_t iterations = 100000;  // after burn-in
  std::size_t thinning = 100;
  std::size_t refit = 1000;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--h", radii.hard_core, "hard-core distance (pixels)")->capture_default_str();
    cmd.add_option("--R", radii.interaction, "interaction radius (pixels)")->capture_default_str();
    cmd.add_option("--a0", priors.a0, "Gamma shape for lambda")->capture_default_str();
    cmd.add_option("--b0", priors.b0, "Gamma rate for lambda")->capture_default_str();
    cmd.add_option("--a1", priors.a1, "Gamma shape for beta")->capture_default_str();
    cmd.add_option("--b1", priors.b1, "Gamma rate for beta")->capture_default_str();
    cmd.add_option("--p1", priors.p1, "Beta shape p for gamma")->capture_default_str();
    cmd.add_option("--q1", priors.q1, "Beta shape q for gamma")->capture_default_str();
    cmd.add_option("--lambda0", priors.lambda0, "intensity anchor for the default label prior")->capture_default_str();
    cmd.add_option("--pw", p_w, "label prior P(W=1); derived from the data when omitted")->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--sigma1", proposal.sigma1, "log-normal step for beta")->capture_default_str();
    cmd.add_option("--sigma2", proposal.sigma2, "log-normal step for gamma")->capture_default_str();
    cmd.add_option("--rho", proposal.rho12, "step correlation")->capture_default_str();
    cmd.add_option("--p-theta", proposal.p_theta, "probability of a parameter update")->capture_default_str();
    cmd.add_option("--p-lambda", proposal.p_lambda, "probability of a lambda step within it")->capture_default_str();
    cmd.add_option("--aux-steps", proposal.aux_chain_steps, "auxiliary chain length")->capture_default_str();
    cmd.add_option("--burnin", burn_in, "burn-in iterations")->capture_default_str();
    cmd.add_option("--iters", iterations, "iterations after burn-in")->capture_default_str();
    cmd.add_option("--thin", thinning, "thinning factor")->capture_default_str();
    cmd.add_option("--refit", refit, "burn-in refit interval for the auxiliary parameters")->capture_default_str();
  }

  MiSealConfig config() const {
    MiSealConfig c;
    c.priors = priors;
    if (!(priors.lambda0 > 0.0)) throw DataError("lambda0 must be positive");
    if (p_w) {
      c.priors.p_w = *p_w;
      c.derive_label_prior = false;
    }
    c.proposal = proposal;
    c.radii = radii;
    c.schedule = {burn_in, burn_in + iterations, thinning, refit};
    c.priors.validate();
    c.proposal.validate();
    c.radii.validate();
    c.schedule.validate();
    return c;
  }
};

// ---- synth ------------------------------------------------------------------

struct SynthCmd {
  std::string kind = "radial";
  std::size_t size = 200;
  double ridge = 10.0;
  double theta = 0.0;
  std::vector<double> center;
  std::vector<std::string> out;
  std::string mask_out;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("synth", "emit a built-in orientation/frequency pair");
    c->add_option("--kind", kind, "constant | radial | tangential")
        ->check(CLI::IsMember({"constant", "radial", "tangential"}))
        ->capture_default_str();
    c->add_option("--size", size, "raster side in pixels")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--ridge", ridge, "ridge distance d (pixels)")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--theta", theta, "angle of the constant field (radians)")->capture_default_str();
    c->add_option("--center", center, "centre x y (default: raster centre)")->expected(2);
    c->add_option("--out", out, "orientation and frequency output files")->expected(2)->required();
    c->add_option("--mask-out", mask_out, "also write the (full) mask");
    c->callback([this] { run(); });
  }

  void run() const {
    const double mid = 0.5 * static_cast<double>(size);
    const Point ctr = center.empty() ? Point{mid, mid} : Point{center[0], center[1]};
    const auto f = make_synthetic_fields(parse_synthetic_kind(kind), size, ctr, ridge, theta);
    write_field_grid(out[0], to_file(f.orientation));
    write_field_grid(out[1], to_file(f.frequency));
    if (!mask_out.empty()) write_field_grid(mask_out, to_file(f.roi));
  }
};

// ---- fields -----------------------------------------------------------------

struct FieldsCmd {
  std::string of, rf, mask, out;
  double sigma = 8.0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("fields", "necessary-minutiae intensity map from orientation and frequency fields");
    c->add_option("--of", of, "orientation grid")->required()->check(CLI::ExistingFile);
    c->add_option("--rf", rf, "ridge frequency grid")->required()->check(CLI::ExistingFile);
    c->add_option("--mask", mask, "region of interest (default: full raster)")->check(CLI::ExistingFile);
    c->add_option("--sigma", sigma, "smoothing scale (pixels)")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--out", out, "intensity grid output")->required();
    c->callback([this] { run(); });
  }

  void run() const {
    const auto orientation = to_orientation(read_field_grid(of));
    const auto frequency = to_scalar(read_field_grid(rf));
    if (!(orientation.geometry() == frequency.geometry()))
      throw GeometryMismatch("orientation and frequency rasters differ in geometry");
    const auto roi = roi_or_full(mask, orientation.geometry());
    write_field_grid(out, to_file(necessary_intensity(orientation, frequency, roi, sigma)));
  }
};

// ---- simulate ---------------------------------------------------------------

struct SimulateCmd {
  std::string model;
  std::string mu, mask, out;
  std::size_t width = 0;
  double lambda = 1e-4, beta = 1.9, gamma = 0.37;
  InteractionRadii radii;
  std::size_t steps = 0;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("simulate", "draw a Poisson, Strauss-with-hard-core or superposed pattern");
    c->add_option("model", model, "poisson | strauss | superposition")
        ->required()
        ->check(CLI::IsMember({"poisson", "strauss", "superposition"}));
    c->add_option("--mu", mu, "trend grid (required for strauss and superposition)")->check(CLI::ExistingFile);
    c->add_option("--mask", mask, "region of interest")->check(CLI::ExistingFile);
    c->add_option("--size", width, "square window side when no grid is given");
    c->add_option("--lambda", lambda, "random intensity")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--beta", beta, "trend scale")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--gamma", gamma, "interaction parameter in (0, 1]")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c->add_option("--h", radii.hard_core, "hard-core distance")->capture_default_str();
    c->add_option("--R", radii.interaction, "interaction radius")->capture_default_str();
    c->add_option("--steps", steps, "birth-death-move steps (default: automatic)");
    c->add_option("--seed", seed, "random seed")->required();
    c->add_option("--out", out, "POINTS output (default: stdout)");
    c->callback([this] { run(); });
  }

  void run() const {
    radii.validate();
    const bool needs_trend = model != "poisson";
    if (needs_trend && mu.empty()) throw UsageError(model + " needs --mu");
    std::shared_ptr<const ScalarGrid> trend;
    std::optional<RegionOfInterest> roi;
    if (!mu.empty()) {
      trend = std::make_shared<ScalarGrid>(to_scalar(read_field_grid(mu)));
      roi = roi_or_full(mask, trend->geometry());
    } else if (!mask.empty()) {
      roi = load_roi(mask);
    } else if (width > 0) {
      roi = RegionOfInterest::full(width, width);
    } else {
      throw UsageError("poisson needs a window: --mu, --mask or --size");
    }

    Rng rng(seed);
    PointsFile file;
    if (model != "strauss") {
      for (const auto& p : sample_poisson(*roi, lambda, rng).points) {
        file.points.push_back(p);
        file.labels.push_back(0);
      }
    }
    if (needs_trend) {
      ModelParams params;
      params.lambda = lambda;
      params.beta = beta;
      params.gamma = gamma;
      params.radii = radii;
      params.trend = trend;
      const std::size_t n = steps ? steps : StraussSampler::default_steps(params, *roi);
      for (const auto& p : sample_strauss_hardcore(params, *roi, n, rng).points) {
        file.points.push_back(p);
        file.labels.push_back(1);
      }
    }
    if (model != "superposition") file.labels.clear();
    emit(out, [&](std::ostream& os) { write_points(os, file); });
  }
};

// ---- infer ------------------------------------------------------------------

struct InferCmd {
  std::string pattern, mu, mask, out;
  std::uint64_t seed = 0;
  SamplerFlags flags;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("infer", "separate necessary from random minutiae with the MiSeal sampler");
    c->add_option("--pattern", pattern, "POINTS input")->required()->check(CLI::ExistingFile);
    c->add_option("--mu", mu, "necessary-minutiae intensity grid")->required()->check(CLI::ExistingFile);
    c->add_option("--mask", mask, "region of interest (default: full raster)")->check(CLI::ExistingFile);
    c->add_option("--seed", seed, "random seed")->required();
    c->add_option("--out", out, "output directory")->required();
    flags.add_to(*c);
    c->callback([this] { run(); });
  }

  void run() const {
    const auto config = flags.config();
    auto trend = std::make_shared<ScalarGrid>(to_scalar(read_field_grid(mu)));
    const auto roi = roi_or_full(mask, trend->geometry());
    const auto zeta = load_pattern(pattern, roi);
    if (zeta.empty()) throw TooFewPoints("pattern has no points");

    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) throw DataError("cannot create " + out + ": " + ec.message());
    const std::filesystem::path dir(out);

    const auto trace = run_miseal(zeta, trend, roi, config, seed);
    emit((dir / "trace.txt").string(), [&](std::ostream& os) { write_trace(os, trace.records); });
    emit((dir / "labels.txt").string(), [&](std::ostream& os) { write_labels(os, zeta, trace.label_frequency); });
    emit((dir / "label_samples.txt").string(), [&](std::ostream& os) { write_label_samples(os, trace.label_samples); });
    std::cerr << "acceptance: beta/gamma " << format_double(trace.beta_gamma_moves.rate()) << ", flips "
              << format_double(trace.flip_moves.rate()) << "\n";
  }
};

// ---- pcf --------------------------------------------------------------------

struct PcfCmd {
  std::vector<std::string> patterns;
  std::string mask, intensity_map, out;
  std::optional<double> intensity;
  double r_max = 60.0, r_step = 1.0, bandwidth = 0.0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("pcf", "pair correlation function, pooled over several patterns");
    c->add_option("--pattern", patterns, "POINTS input (repeatable)")->required()->check(CLI::ExistingFile);
    c->add_option("--mask", mask, "window mask")->required()->check(CLI::ExistingFile);
    c->add_option("--intensity", intensity, "constant intensity (default: n / area)")->check(CLI::PositiveNumber);
    c->add_option("--intensity-map", intensity_map, "intensity grid for the inhomogeneous estimator")
        ->check(CLI::ExistingFile);
    c->add_option("--rmax", r_max, "largest distance")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--rstep", r_step, "distance step")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--bandwidth", bandwidth, "kernel half-width (0: automatic)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    c->add_option("--out", out, "output (default: stdout)");
    c->callback([this] { run(); });
  }

  void run() const {
    if (intensity && !intensity_map.empty()) throw UsageError("--intensity and --intensity-map are exclusive");
    const auto roi = load_roi(mask);
    std::optional<ScalarGrid> map;
    if (!intensity_map.empty()) {
      map = to_scalar(read_field_grid(intensity_map));
      if (!(map->geometry() == roi.geometry())) throw GeometryMismatch("intensity map and mask differ in geometry");
    }
    std::vector<double> r;
    for (double x = r_step; x <= r_max + 1e-9; x += r_step) r.push_back(x);

    std::vector<PcfCurve> curves;
    for (const auto& path : patterns) {
      const auto pattern = load_pattern(path, roi);
      PcfIntensity lam;
      if (map) lam.map = &*map;
      else lam.constant = intensity ? *intensity : static_cast<double>(pattern.size()) / pattern.area;
      curves.push_back(pcf_estimate(pattern, roi, lam, r, bandwidth));
    }
    emit(out, [&](std::ostream& os) {
      if (curves.size() == 1) write_pcf(os, curves.front());
      else write_pcf(os, pcf_pool(curves));
    });
  }
};

// ---- regress ----------------------------------------------------------------

struct RegressCmd {
  std::string pattern, of, rf, mask, out;
  std::size_t patches = 100;
  double sigma = 8.0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("regress", "identity-link Poisson regression of patch counts on m(A)");
    c->add_option("--pattern", pattern, "POINTS input")->required()->check(CLI::ExistingFile);
    c->add_option("--of", of, "orientation grid")->required()->check(CLI::ExistingFile);
    c->add_option("--rf", rf, "ridge frequency grid")->required()->check(CLI::ExistingFile);
    c->add_option("--mask", mask, "region of interest (default: full raster)")->check(CLI::ExistingFile);
    c->add_option("--patches", patches, "target number of patches")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--sigma", sigma, "smoothing scale (pixels)")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--out", out, "output (default: stdout)");
    c->callback([this] { run(); });
  }

  void run() const {
    const auto orientation = to_orientation(read_field_grid(of));
    const auto frequency = to_scalar(read_field_grid(rf));
    if (!(orientation.geometry() == frequency.geometry()))
      throw GeometryMismatch("orientation and frequency rasters differ in geometry");
    const auto roi = roi_or_full(mask, orientation.geometry());
    const auto zeta = load_pattern(pattern, roi);
    FieldOptions opt;
    opt.smoothing_sigma = sigma;
    const FieldModel model(orientation, frequency, roi, opt);
    auto grid = PatchGrid::make(roi, patches);
    std::vector<PatchObservation> data;
    for (const auto& pc : patch_counts(zeta, model, grid)) {
      if (!pc.patch.excluded) data.push_back({pc.m, static_cast<double>(pc.count)});
    }
    if (data.size() < 3) throw TooFewPoints("fewer than three usable patches");
    const auto result = poisson_regression_identity(data);
    emit(out, [&](std::ostream& os) { write_regression(os, result); });
  }
};

// ---- study ------------------------------------------------------------------

struct StudyCmd {
  std::vector<std::string> kinds{"radial"};
  std::vector<double> ridges{8.0, 10.0};
  std::size_t size = 200;
  double sigma = 8.0;
  std::size_t replicates = 20;
  double level = 0.9;
  std::uint64_t seed = 0;
  std::string out;
  SamplerFlags flags;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("study", "simulation study with truths drawn from the priors");
    c->add_option("--kind", kinds, "synthetic field kinds (repeatable)")
        ->check(CLI::IsMember({"constant", "radial", "tangential"}))
        ->capture_default_str();
    c->add_option("--ridge", ridges, "ridge distances (repeatable)")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--size", size, "raster side")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--sigma", sigma, "smoothing scale for the intensity map")->capture_default_str();
    c->add_option("--replicates", replicates, "number of replicates")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--level", level, "credible level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c->add_option("--seed", seed, "random seed")->required();
    c->add_option("--out", out, "report output (default: stdout)");
    flags.add_to(*c);
    c->callback([this] { run(); });
  }

  void run() const {
    StudyOptions opt;
    opt.config = flags.config();
    opt.credible_level = level;
    // An explicit --pw asks for that label prior rather than the simulating model's.
    opt.match_simulating_model = !flags.p_w.has_value();
    std::vector<FieldSet> sets;
    const double mid = 0.5 * static_cast<double>(size);
    for (const auto& k : kinds) {
      for (double d : ridges) {
        const auto f = make_synthetic_fields(parse_synthetic_kind(k), size, {mid, mid}, d);
        auto trend = std::make_shared<ScalarGrid>(necessary_intensity(f.orientation, f.frequency, f.roi, sigma));
        sets.push_back({k + "_d" + format_double(d), trend, std::make_shared<RegionOfInterest>(f.roi)});
      }
    }
    std::vector<std::uint64_t> seeds;
    for (std::size_t r = 0; r < replicates; ++r) seeds.push_back(derive_seed(seed, r));
    const auto report = simulation_study(sets, opt, seeds);
    emit(out, [&](std::ostream& os) { write_study_report(os, report); });
  }
};

// ---- dependence -------------------------------------------------------------

struct DependenceCmd {
  std::string samples, out;
  std::size_t i = 0, j = 0, thin = 1, batches = 10;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("dependence", "contingency table and correlation of two point labels");
    c->add_option("--samples", samples, "LABELSAMPLES input")->required()->check(CLI::ExistingFile);
    c->add_option("--i", i, "first point index (0-based)")->required();
    c->add_option("--j", j, "second point index (0-based)")->required();
    c->add_option("--thin", thin, "extra thinning")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--batches", batches, "batches for the correlation")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--out", out, "output (default: stdout)");
    c->callback([this] { run(); });
  }

  void run() const {
    if (i == j) throw UsageError("--i and --j must differ");
    std::ifstream in(samples);
    if (!in) throw DataError("cannot open " + samples);
    const auto s = read_label_samples(in);
    const auto report = label_dependence_report(s, i, j, thin, batches);
    emit(out, [&](std::ostream& os) { write_dependence(os, report); });
  }
};

// ---- delete-experiment ------------------------------------------------------

struct DeleteCmd {
  std::vector<std::string> patterns, samples;
  std::string mask, out;
  std::size_t replicates = 200;
  double radius = 15.0;
  std::uint64_t seed = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("delete-experiment", "score after deleting posterior-random vs uniform points");
    c->add_option("--pattern", patterns, "the two POINTS inputs")->expected(2)->required()->check(CLI::ExistingFile);
    c->add_option("--samples", samples, "the two LABELSAMPLES inputs")->expected(2)->required()->check(CLI::ExistingFile);
    c->add_option("--mask", mask, "window mask shared by both patterns")->required()->check(CLI::ExistingFile);
    c->add_option("--replicates", replicates, "replicates")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--radius", radius, "matching radius of the built-in scorer")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("--seed", seed, "random seed")->required();
    c->add_option("--out", out, "output (default: stdout)");
    c->callback([this] { run(); });
  }

  void run() const {
    const auto roi = load_roi(mask);
    const auto z1 = load_pattern(patterns[0], roi);
    const auto z2 = load_pattern(patterns[1], roi);
    auto read = [](const std::string& p) {
      std::ifstream in(p);
      if (!in) throw DataError("cannot open " + p);
      return read_label_samples(in);
    };
    const auto t1 = read(samples[0]);
    const auto t2 = read(samples[1]);
    Rng rng(seed);
    const auto report = deletion_experiment(z1, z2, t1, t2, greedy_match_scorer(radius), replicates, rng);
    emit(out, [&](std::ostream& os) { write_deletion(os, report); });
  }
};

// Unsectioned config keys belong to whichever command is being run.
class FlatConfig : public CLI::ConfigINI {
 public:
  explicit FlatConfig(const CLI::App& app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    const auto selected = app_.get_subcommands();
    if (selected.empty()) return items;
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {selected.front()->get_name()};
    }
    return items;
  }

 private:
  const CLI::App& app_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"miseal: separate necessary from random fingerprint minutiae"};
  // `--h` is the hard-core distance, so help answers to --help only.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1, 1);
  // Lets `--config` follow the command name as well as precede it.
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  // Keys meant for other commands are ignored so one file can serve several.
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  app.config_formatter(std::make_shared<FlatConfig>(app));

  SynthCmd synth;
  FieldsCmd fields;
  SimulateCmd simulate;
  InferCmd infer;
  PcfCmd pcf;
  RegressCmd regress;
  StudyCmd study;
  DependenceCmd dependence;
  DeleteCmd del;
  fields.add(app);
  simulate.add(app);
  infer.add(app);
  pcf.add(app);
  regress.add(app);
  study.add(app);
  dependence.add(app);
  del.add(app);
  synth.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
