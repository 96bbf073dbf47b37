// kerrshadow run configuration: sectioned key = value files plus overrides

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "kerr/integrator.hpp"
#include "kerr/observer.hpp"
#include "kerr/raytracer.hpp"

namespace kerrshadow {

// Bad user input; maps to exit code 2
class ValidationError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

// Flat map keyed "section.key"; keys before the first header have no section prefix
class ConfigValues
{
 public:
  static ConfigValues parse(const std::string &text, const std::string &origin = "<config>");
  static ConfigValues load(const std::filesystem::path &path);

  void set(const std::string &key, const std::string &value) { values_[key] = value; }
  bool has(const std::string &key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string> &values() const noexcept { return values_; }

  std::optional<std::string> text(const std::string &key) const;
  std::optional<double> number(const std::string &key) const;
  std::optional<long long> integer(const std::string &key) const;
  std::optional<bool> boolean(const std::string &key) const;

 private:
  std::map<std::string, std::string> values_;
};

struct ObserverBlock
{
  std::optional<kerr::ObserverKind> kind;
  double r0 = 5.0;
  double theta0 = 1.5707963267948966;
  std::optional<double> omega;  // required unless kind is set
  double phi0 = 0.0;
};

struct ImageBlock
{
  int width = 512;
  int height = 512;
  std::optional<double> extent;  // fitted to the analytic shadow when absent
  bool overlay = false;
  unsigned workers = 0;
};

struct OutputBlock
{
  std::filesystem::path dir = ".";
  std::string shadow = "shadow.csv";
  std::string image = "render.ppm";
  std::string manifest = "render.manifest";
  std::string separatrix = "separatrix.csv";
  std::string bifurcation_prefix = "bifurcation";
};

struct RunConfig
{
  double a = 0.0;
  ObserverBlock observer;
  kerr::SceneConfig scene;
  ImageBlock image;
  kerr::IntegratorControls integrator;
  OutputBlock output;
  std::size_t shadow_samples = 256;
  std::size_t curve_samples = 512;
  // classify
  std::optional<double> lambda;
  std::optional<double> eta;
  std::optional<double> r_start;
  // separatrix
  std::optional<double> r_c;
  double separatrix_sigma = 5.0;
  std::size_t separatrix_samples = 501;
  double separatrix_theta0 = 1.5707963267948966;

  static RunConfig from_values(const ConfigValues &values);

  std::filesystem::path output_path(const std::string &name) const { return output.dir / name; }
};

}  // namespace kerrshadow
