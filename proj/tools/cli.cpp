#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtomo/completion.hpp"
#include "mtomo/error.hpp"
#include "mtomo/experiment.hpp"
#include "mtomo/io.hpp"
#include "mtomo/phantom.hpp"
#include "mtomo/radon.hpp"
#include "mtomo/reconstruct.hpp"
#include "mtomo/recovery.hpp"

namespace mtomo::cli {

namespace {

// Shortest round-trip representation, always with a decimal point.
std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

PhantomSpec phantom_from(const std::string& source) {
  return source.empty() || source == "reference" ? PhantomSpec::reference()
                                                 : load_phantom_spec(source);
}

struct PhantomArgs {
  std::string spec;
  int size = 128;
  std::string out;
  std::string pgm;
  std::string write_spec;
};

struct ProjectArgs {
  std::string image;
  std::string phantom;
  int views = 180;
  double step = 1.0;
  int rays = 128;
  std::vector<double> known;
  double alpha = -1.0;
  double noise_sigma = 0.0;
  std::uint64_t noise_seed = 0;
  std::string out;
};

struct RecoverArgs {
  std::string sino;
  int order = 15;
  std::string basis = "legendre";
  double ridge = 0.0;
  bool stacked = false;
  std::string out;
  std::string diagnostics;
};

struct CompleteArgs {
  std::string sino;
  int order = 15;
  std::string basis = "legendre";
  std::string blend = "replace_unknown_only";
  double ridge = 0.0;
  bool stacked = false;
  std::string out;
  std::string sidecar;
};

struct ReconstructArgs {
  std::string sino;
  int size = 128;
  std::string filter = "ram-lak";
  bool zero_fill = false;
  std::string out;
  std::string pgm;
};

struct EvaluateArgs {
  std::string ref;
  std::string test;
};

struct SweepArgs {
  std::string phantom;
  std::vector<double> alphas{5, 10, 15, 20, 25, 30};
  std::vector<int> orders{25};
  std::vector<std::string> bases{"legendre"};
  int views = 180;
  double step = 1.0;
  int rays = 128;
  int size = 128;
  std::string filter = "ram-lak";
  double ridge = 0.0;
  bool stacked = false;
  std::string out_dir = ".";
};

int cmd_phantom(const PhantomArgs& a, std::ostream& out) {
  const PhantomSpec spec = phantom_from(a.spec);
  const Image img = rasterize(spec, a.size);
  io::save_image(a.out, img);
  if (!a.pgm.empty()) io::save_pgm(a.pgm, img);
  if (!a.write_spec.empty()) save_phantom_spec(a.write_spec, spec);
  out << "wrote " << a.out << '\n';
  return kOk;
}

int cmd_project(const ProjectArgs& a, std::ostream& out, std::ostream& err) {
  if (a.image.empty() == a.phantom.empty()) {
    err << "project: give exactly one of --image or --phantom\n";
    return kUsage;
  }
  const auto geometry = SinogramGeometry::uniform(a.views, a.rays, a.step);
  Sinogram sino = a.image.empty() ? project_phantom(phantom_from(a.phantom), geometry)
                                  : project_image(io::load_image(a.image), geometry);
  if (!a.known.empty()) {
    if (a.known.size() != 2 || a.known[0] > a.known[1]) {
      err << "project: --known expects LO,HI with LO <= HI (degrees)\n";
      return kUsage;
    }
    sino.mask_known_range(a.known[0], a.known[1]);
  } else if (a.alpha >= 0.0) {
    sino.mask_known_range(a.alpha, 180.0 - a.alpha);
  }
  if (sino.known_count() == 0) {
    err << "project: known range selects no views\n";
    return kUsage;
  }
  if (a.noise_sigma > 0.0) {
    std::mt19937_64 rng(a.noise_seed);
    std::normal_distribution<double> noise(0.0, a.noise_sigma);
    for (int v : sino.known_views())
      for (auto& x : sino.row(v)) x += noise(rng);
  }
  io::save_sinogram(a.out, sino);
  out << "wrote " << a.out << " (" << sino.known_count() << '/' << sino.n_views()
      << " views known)\n";
  return kOk;
}

int cmd_recover(const RecoverArgs& a, std::ostream& out) {
  const Sinogram sino = io::load_sinogram(a.sino);
  const RecoveryReport report =
      recover_moments(sino, a.order, parse_basis(a.basis), {a.ridge, a.stacked});
  io::save_moments_csv(a.out, report.moments);
  if (!a.diagnostics.empty()) io::save_diagnostics_csv(a.diagnostics, report);
  out << "wrote " << a.out << '\n';
  return kOk;
}

int cmd_complete(const CompleteArgs& a, std::ostream& out) {
  const Sinogram sino = io::load_sinogram(a.sino);
  CompletionConfig cfg;
  cfg.order = a.order;
  cfg.basis = parse_basis(a.basis);
  cfg.blend = parse_blend(a.blend);
  cfg.recovery.ridge = a.ridge;
  cfg.recovery.stacked = a.stacked;
  const auto result = complete_sinogram(sino, cfg);
  io::save_sinogram(a.out, result.sinogram);
  const std::string sidecar = a.sidecar.empty() ? a.out + ".txt" : a.sidecar;
  io::save_completion_sidecar(sidecar, cfg, sino, result.report);
  out << "wrote " << a.out << " and " << sidecar << '\n';
  return kOk;
}

int cmd_reconstruct(const ReconstructArgs& a, std::ostream& out) {
  Sinogram sino = io::load_sinogram(a.sino);
  if (a.zero_fill) sino = zero_filled(sino);
  const Image img = fbp_reconstruct(sino, {a.size, parse_filter(a.filter)});
  io::save_image(a.out, img);
  if (!a.pgm.empty()) io::save_pgm(a.pgm, img);
  out << "wrote " << a.out << '\n';
  return kOk;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  out << format_real(mse_percent(io::load_image(a.ref), io::load_image(a.test))) << '\n';
  return kOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentSetup setup;
  setup.phantom = phantom_from(a.phantom);
  setup.n_views = a.views;
  setup.step_deg = a.step;
  setup.n_rays = a.rays;
  setup.image_size = a.size;
  setup.filter = parse_filter(a.filter);
  setup.recovery.ridge = a.ridge;
  setup.recovery.stacked = a.stacked;
  std::vector<Basis> bases;
  for (const auto& b : a.bases) bases.push_back(parse_basis(b));
  for (double alpha : a.alphas)
    if (!(alpha >= 0.0 && alpha < 90.0)) {
      err << "sweep: alpha must lie in [0, 90)\n";
      return kUsage;
    }

  const LimitedAngleExperiment experiment(setup);
  const auto rows = run_sweep(experiment, a.alphas, a.orders, bases);
  std::filesystem::create_directories(a.out_dir);
  const auto path = (std::filesystem::path(a.out_dir) / "sweep.csv").string();
  std::ofstream csv(path);
  if (!csv) throw IoError("cannot write '" + path + "'");
  write_sweep_csv(csv, rows);
  csv.close();
  if (!csv) throw IoError("write failed for '" + path + "'");

  bool aborted = false;
  for (const auto& r : rows)
    if (r.abort_reason) {
      err << "sweep: alpha=" << r.alpha << " M=" << r.order << ' ' << to_string(r.basis) << ": "
          << *r.abort_reason << '\n';
      aborted = true;
    }
  out << "wrote " << path << " (" << rows.size() << " rows)\n";
  return aborted ? kConditioning : kOk;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limited-angle tomography by orthogonal-moment sinogram completion",
               "moment-tomo"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  PhantomArgs phantom;
  auto* sc_phantom = app.add_subcommand("phantom", "Rasterize a phantom to a raw image");
  sc_phantom->add_option("--spec", phantom.spec, "Phantom spec file (default: built-in reference)");
  sc_phantom->add_option("--size", phantom.size, "Pixels per side")->check(CLI::Range(16, 8192));
  sc_phantom->add_option("--out", phantom.out, "Raw image output")->required();
  sc_phantom->add_option("--pgm", phantom.pgm, "Optional 16-bit PGM preview");
  sc_phantom->add_option("--write-spec", phantom.write_spec, "Also write the spec text file");

  ProjectArgs project;
  auto* sc_project = app.add_subcommand("project", "Compute a parallel-beam sinogram");
  sc_project->add_option("--image", project.image, "Raw image to project (discrete projector)");
  sc_project->add_option("--phantom", project.phantom,
                         "Phantom spec file or 'reference' (exact projections)");
  sc_project->add_option("--views", project.views, "Number of views")->check(CLI::PositiveNumber);
  sc_project->add_option("--step", project.step, "Angular step in degrees")->check(CLI::PositiveNumber);
  sc_project->add_option("--rays", project.rays, "Rays per view")->check(CLI::Range(2, 1 << 16));
  sc_project->add_option("--known", project.known, "Known range LO,HI in degrees")->delimiter(',');
  sc_project->add_option("--alpha", project.alpha, "Known range [alpha, 180-alpha] in degrees");
  sc_project->add_option("--noise-sigma", project.noise_sigma, "Additive Gaussian noise on known views");
  sc_project->add_option("--noise-seed", project.noise_seed, "Noise generator seed");
  sc_project->add_option("--out", project.out, "Sinogram output")->required();

  RecoverArgs recover;
  auto* sc_recover = app.add_subcommand("recover", "Recover image moments from known views");
  sc_recover->add_option("--sino", recover.sino, "Input sinogram")->required();
  sc_recover->add_option("--order", recover.order, "Maximum moment order M")->check(CLI::NonNegativeNumber);
  sc_recover->add_option("--basis", recover.basis, "legendre or geometric");
  sc_recover->add_option("--ridge", recover.ridge, "Relative ridge weight (0 = none)");
  sc_recover->add_flag("--stacked", recover.stacked, "Solve all orders as one system");
  sc_recover->add_option("--out", recover.out, "Moment CSV output")->required();
  sc_recover->add_option("--diagnostics", recover.diagnostics, "Per-order diagnostics CSV");

  CompleteArgs complete;
  auto* sc_complete = app.add_subcommand("complete", "Estimate unknown views from recovered moments");
  sc_complete->add_option("--sino", complete.sino, "Input sinogram with view mask")->required();
  sc_complete->add_option("--order", complete.order, "Maximum moment order M")->check(CLI::NonNegativeNumber);
  sc_complete->add_option("--basis", complete.basis, "legendre or geometric");
  sc_complete->add_option("--blend", complete.blend, "replace_unknown_only or replace_all");
  sc_complete->add_option("--ridge", complete.ridge, "Relative ridge weight (0 = none)");
  sc_complete->add_flag("--stacked", complete.stacked, "Solve all orders as one system");
  sc_complete->add_option("--out", complete.out, "Completed sinogram output")->required();
  sc_complete->add_option("--sidecar", complete.sidecar, "Run record (default: OUT.txt)");

  ReconstructArgs recon;
  auto* sc_recon = app.add_subcommand("reconstruct", "Filtered backprojection");
  sc_recon->add_option("--sino", recon.sino, "Complete sinogram")->required();
  sc_recon->add_option("--size", recon.size, "Output pixels per side")->check(CLI::Range(16, 8192));
  sc_recon->add_option("--filter", recon.filter, "ram-lak or hamming");
  sc_recon->add_flag("--zero-fill", recon.zero_fill, "Zero unknown views instead of rejecting them");
  sc_recon->add_option("--out", recon.out, "Raw image output")->required();
  sc_recon->add_option("--pgm", recon.pgm, "Optional 16-bit PGM preview");

  EvaluateArgs eval;
  auto* sc_eval = app.add_subcommand("evaluate", "Print MSE(%) of a test image against a reference");
  sc_eval->add_option("--ref", eval.ref, "Reference raw image")->required();
  sc_eval->add_option("--test", eval.test, "Test raw image")->required();

  SweepArgs sweep;
  auto* sc_sweep = app.add_subcommand("sweep", "alpha x M x basis experiment grid to sweep.csv");
  sc_sweep->add_option("--phantom", sweep.phantom, "Phantom spec file or 'reference'");
  sc_sweep->add_option("--alpha", sweep.alphas, "Comma-separated alpha values (degrees)")->delimiter(',');
  sc_sweep->add_option("--order", sweep.orders, "Comma-separated moment orders")->delimiter(',');
  sc_sweep->add_option("--basis", sweep.bases, "Comma-separated bases")->delimiter(',');
  sc_sweep->add_option("--views", sweep.views, "Number of views")->check(CLI::PositiveNumber);
  sc_sweep->add_option("--step", sweep.step, "Angular step in degrees")->check(CLI::PositiveNumber);
  sc_sweep->add_option("--rays", sweep.rays, "Rays per view")->check(CLI::Range(2, 1 << 16));
  sc_sweep->add_option("--size", sweep.size, "Image pixels per side")->check(CLI::Range(16, 8192));
  sc_sweep->add_option("--filter", sweep.filter, "ram-lak or hamming");
  sc_sweep->add_option("--ridge", sweep.ridge, "Relative ridge weight (0 = none)");
  sc_sweep->add_flag("--stacked", sweep.stacked, "Solve all orders as one system");
  sc_sweep->add_option("--out-dir", sweep.out_dir, "Directory for sweep.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sc_phantom) return cmd_phantom(phantom, out);
    if (*sc_project) return cmd_project(project, out, err);
    if (*sc_recover) return cmd_recover(recover, out);
    if (*sc_complete) return cmd_complete(complete, out);
    if (*sc_recon) return cmd_reconstruct(recon, out);
    if (*sc_eval) return cmd_evaluate(eval, out);
    if (*sc_sweep) return cmd_sweep(sweep, out, err);
  } catch (const RecoveryError& e) {
    err << "error: " << e.what() << '\n';
    return kConditioning;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace mtomo::cli
