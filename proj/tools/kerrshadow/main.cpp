// kerrshadow command-line front end

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "kerr/errors.hpp"
#include "kerrshadow/commands.hpp"
#include "kerrshadow/config.hpp"

namespace {

using kerrshadow::ConfigValues;
using kerrshadow::RunConfig;

// Flag values keyed by the config key they override
struct Overrides
{
  std::map<std::string, std::string> values;
  std::vector<std::string> assignments;  // --set section.key=value
  bool overlay = false;
  bool flat = false;
};

void add_option(CLI::App &app, Overrides &o, const std::string &flag, const std::string &key,
                const std::string &help)
{
  app.add_option_function<std::string>(
      flag, [&o, key](const std::string &v) { o.values[key] = v; }, help + " [" + key + "]");
}

void add_observer_options(CLI::App &app, Overrides &o)
{
  add_option(app, o, "--observer", "observer.kind", "Named observer: zamo, static or carter");
  add_option(app, o, "--r0", "observer.r0", "Observer radius");
  add_option(app, o, "--theta0", "observer.theta0", "Observer polar angle in radians");
  add_option(app, o, "--omega", "observer.omega", "Observer angular velocity");
  add_option(app, o, "--phi0", "observer.phi0", "Observer azimuth in radians");
}

void add_integrator_options(CLI::App &app, Overrides &o)
{
  add_option(app, o, "--rtol", "integrator.rtol", "Relative tolerance");
  add_option(app, o, "--atol", "integrator.atol", "Absolute tolerance");
  add_option(app, o, "--r-max", "integrator.r_max", "Escape radius");
  add_option(app, o, "--max-steps", "integrator.max_steps", "Step limit per ray");
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Null geodesics, shadows and ray-traced images of Kerr black holes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string config_path;
  Overrides o;
  app.add_option("-c,--config", config_path, "Config file with sections [observer] [scene] "
                                             "[image] [integrator] [output] ...")
      ->check(CLI::ExistingFile);
  add_option(app, o, "-a,--spin", "a", "Kerr spin parameter in [0, 1]");
  add_option(app, o, "-o,--output-dir", "output.dir",
             "Output directory (KERRSHADOW_OUTPUT_DIR overrides the config file)");
  app.add_option("--set", o.assignments, "Override any config key: section.key=value");

  CLI::App *shadow = app.add_subcommand("shadow", "Write the analytic shadow boundary as CSV");
  add_observer_options(*shadow, o);
  add_option(*shadow, o, "--samples", "shadow.samples", "r_c samples per branch");
  add_option(*shadow, o, "--out", "output.shadow", "CSV file name");

  CLI::App *render = app.add_subcommand("render", "Ray-trace the observer's sky into a PPM image");
  add_observer_options(*render, o);
  add_integrator_options(*render, o);
  add_option(*render, o, "--width", "image.width", "Image width in pixels");
  add_option(*render, o, "--height", "image.height", "Image height in pixels");
  add_option(*render, o, "--extent", "image.extent",
             "Half-width of the image plane window (default: fitted to the shadow)");
  add_option(*render, o, "--workers", "image.workers", "Worker threads, 0 for all cores");
  add_option(*render, o, "--r-celestial", "scene.r_celestial", "Celestial sphere radius");
  add_option(*render, o, "--out", "output.image", "PPM file name");
  add_option(*render, o, "--manifest", "output.manifest", "Manifest file name");
  render->add_flag("--overlay-boundary", o.overlay, "Draw the analytic shadow boundary in red");
  render->add_flag("--flat", o.flat, "Straight rays in flat space (control image)");

  CLI::App *bif = app.add_subcommand("bifurcation", "Write critical curves and feasibility raster");
  add_option(*bif, o, "--samples", "bifurcation.samples", "Points per critical curve");
  add_option(*bif, o, "--prefix", "output.bifurcation_prefix", "Output file name prefix");

  CLI::App *classify = app.add_subcommand("classify", "Classify a ray by its impact parameters");
  add_option(*classify, o, "--lambda", "classify.lambda", "lambda = L / E");
  add_option(*classify, o, "--eta", "classify.eta", "eta = Q / E^2");
  add_option(*classify, o, "--r-start", "classify.r_start", "Starting radius");

  CLI::App *sep = app.add_subcommand("separatrix", "Write r, theta, phi along a separatrix");
  add_option(*sep, o, "--r-c", "separatrix.r_c", "Spherical orbit radius");
  add_option(*sep, o, "--r0", "observer.r0", "Starting radius");
  add_option(*sep, o, "--theta0", "separatrix.theta0", "Starting polar angle");
  add_option(*sep, o, "--sigma-max", "separatrix.sigma_max", "Mino time span");
  add_option(*sep, o, "--samples", "separatrix.samples", "Output rows");
  add_option(*sep, o, "--out", "output.separatrix", "CSV file name");

  CLI::App *info = app.add_subcommand("observer-info", "Print observer frame and shadow case");
  add_observer_options(*info, o);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try
  {
    ConfigValues values = config_path.empty() ? ConfigValues{} : ConfigValues::load(config_path);
    if (const char *dir = std::getenv("KERRSHADOW_OUTPUT_DIR"); dir && *dir)
      values.set("output.dir", dir);
    for (const std::string &s : o.assignments)
    {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0)
        throw kerrshadow::ValidationError("--set expects section.key=value, got '" + s + "'");
      values.set(s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto &[key, value] : o.values)
      values.set(key, value);
    if (o.overlay)
      values.set("image.overlay", "true");
    if (o.flat)
      values.set("scene.flat", "true");

    const RunConfig config = RunConfig::from_values(values);
    if (shadow->parsed())
      kerrshadow::cmd_shadow(config, std::cerr);
    else if (render->parsed())
      kerrshadow::cmd_render(config, std::cerr);
    else if (bif->parsed())
      kerrshadow::cmd_bifurcation(config, std::cerr);
    else if (classify->parsed())
      kerrshadow::cmd_classify(config, std::cout);
    else if (sep->parsed())
      kerrshadow::cmd_separatrix(config, std::cerr);
    else if (info->parsed())
      kerrshadow::cmd_observer_info(config, std::cout);
  }
  catch (const kerrshadow::ValidationError &e)
  {
    std::cerr << "kerrshadow: invalid input: " << e.what() << '\n';
    return 2;
  }
  catch (const std::exception &e)
  {
    std::cerr << "kerrshadow: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
