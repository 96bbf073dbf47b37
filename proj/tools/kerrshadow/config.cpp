// kerrshadow run configuration: sectioned key = value files plus overrides

#include "kerrshadow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace kerrshadow {

namespace {

std::string trim(const std::string &s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const std::set<std::string> &known_keys()
{
  static const std::set<std::string> keys{
      "a",
      "observer.kind",         "observer.r0",          "observer.theta0",
      "observer.omega",        "observer.phi0",        "scene.r_celestial",
      "scene.flat",            "scene.palette",        "image.width",
      "image.height",          "image.extent",         "image.overlay",
      "image.workers",         "integrator.rtol",      "integrator.atol",
      "integrator.horizon_shell", "integrator.r_max",  "integrator.max_steps",
      "integrator.sigma_budget", "integrator.initial_step", "output.dir",
      "output.shadow",         "output.image",         "output.manifest",
      "output.separatrix",     "output.bifurcation_prefix", "shadow.samples",
      "bifurcation.samples",   "classify.lambda",      "classify.eta",
      "classify.r_start",      "separatrix.r_c",       "separatrix.sigma_max",
      "separatrix.samples",    "separatrix.theta0",
  };
  return keys;
}

std::array<kerr::Rgb, 4> parse_palette(const std::string &text)
{
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::replace(spaced.begin(), spaced.end(), ';', ' ');
  std::istringstream in(spaced);
  std::array<kerr::Rgb, 4> out{};
  for (kerr::Rgb &c : out)
  {
    int rgb[3];
    for (int &v : rgb)
      if (!(in >> v) || v < 0 || v > 255)
        throw ValidationError("scene.palette needs four r,g,b triples in 0..255");
    c = {static_cast<std::uint8_t>(rgb[0]), static_cast<std::uint8_t>(rgb[1]),
         static_cast<std::uint8_t>(rgb[2])};
  }
  std::string extra;
  if (in >> extra)
    throw ValidationError("scene.palette has more than four colours");
  return out;
}

void require(bool ok, const std::string &message)
{
  if (!ok)
    throw ValidationError(message);
}

}  // namespace

//--------------------------------------------------------------------------------------------------

ConfigValues ConfigValues::parse(const std::string &text, const std::string &origin)
{
  ConfigValues out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(in, line))
  {
    ++number;
    const auto hash = line.find_first_of("#;");
    line = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (line.empty())
      continue;
    const std::string where = origin + ":" + std::to_string(number);
    if (line.front() == '[')
    {
      if (line.back() != ']')
        throw ValidationError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ValidationError(where + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ValidationError(where + ": missing key");
    const std::string full = section.empty() ? key : section + "." + key;
    if (out.has(full))
      throw ValidationError(where + ": duplicate key " + full);
    out.set(full, trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigValues ConfigValues::load(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

std::optional<std::string> ConfigValues::text(const std::string &key) const
{
  const auto it = values_.find(key);
  if (it == values_.end())
    return std::nullopt;
  return it->second;
}

std::optional<double> ConfigValues::number(const std::string &key) const
{
  const auto s = text(key);
  if (!s)
    return std::nullopt;
  double value = 0.0;
  const char *end = s->data() + s->size();
  const auto [ptr, ec] = std::from_chars(s->data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ValidationError(key + ": not a finite number: '" + *s + "'");
  return value;
}

std::optional<long long> ConfigValues::integer(const std::string &key) const
{
  const auto s = text(key);
  if (!s)
    return std::nullopt;
  long long value = 0;
  const char *end = s->data() + s->size();
  const auto [ptr, ec] = std::from_chars(s->data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ValidationError(key + ": not an integer: '" + *s + "'");
  return value;
}

std::optional<bool> ConfigValues::boolean(const std::string &key) const
{
  const auto s = text(key);
  if (!s)
    return std::nullopt;
  if (*s == "true" || *s == "1" || *s == "yes" || *s == "on")
    return true;
  if (*s == "false" || *s == "0" || *s == "no" || *s == "off")
    return false;
  throw ValidationError(key + ": not a boolean: '" + *s + "'");
}

//--------------------------------------------------------------------------------------------------

RunConfig RunConfig::from_values(const ConfigValues &v)
{
  for (const auto &[key, value] : v.values())
    require(known_keys().count(key) != 0, "unknown config key '" + key + "'");

  RunConfig c;
  const auto a = v.number("a");
  require(a.has_value(), "spin 'a' is required");
  c.a = *a;
  require(c.a >= 0.0 && c.a <= 1.0, "spin a must lie in [0, 1], got " + std::to_string(c.a));

  if (const auto kind = v.text("observer.kind"))
  {
    c.observer.kind = kerr::observer_kind_from_string(*kind);
    require(c.observer.kind.has_value(),
            "observer.kind must be zamo, static or carter, got '" + *kind + "'");
  }
  c.observer.r0 = v.number("observer.r0").value_or(c.observer.r0);
  c.observer.theta0 = v.number("observer.theta0").value_or(c.observer.theta0);
  c.observer.omega = v.number("observer.omega");
  c.observer.phi0 = v.number("observer.phi0").value_or(c.observer.phi0);
  require(!(c.observer.kind && c.observer.omega),
          "observer.omega and observer.kind are mutually exclusive");

  c.scene.r_celestial = v.number("scene.r_celestial").value_or(c.scene.r_celestial);
  c.scene.flat = v.boolean("scene.flat").value_or(false);
  if (const auto palette = v.text("scene.palette"))
    c.scene.palette = parse_palette(*palette);

  const long long width = v.integer("image.width").value_or(c.image.width);
  const long long height = v.integer("image.height").value_or(c.image.height);
  require(width > 0 && height > 0 && width <= 16384 && height <= 16384,
          "image dimensions must lie in 1..16384");
  c.image.width = static_cast<int>(width);
  c.image.height = static_cast<int>(height);
  c.image.extent = v.number("image.extent");
  require(!c.image.extent || *c.image.extent > 0.0, "image.extent must be positive");
  c.image.overlay = v.boolean("image.overlay").value_or(false);
  const long long workers = v.integer("image.workers").value_or(0);
  require(workers >= 0 && workers <= 1024, "image.workers must lie in 0..1024");
  c.image.workers = static_cast<unsigned>(workers);

  kerr::IntegratorControls &ic = c.integrator;
  ic.rtol = v.number("integrator.rtol").value_or(ic.rtol);
  ic.atol = v.number("integrator.atol").value_or(ic.atol);
  ic.horizon_shell = v.number("integrator.horizon_shell").value_or(ic.horizon_shell);
  ic.r_max = v.number("integrator.r_max").value_or(ic.r_max);
  ic.sigma_budget = v.number("integrator.sigma_budget").value_or(ic.sigma_budget);
  ic.initial_step = v.number("integrator.initial_step").value_or(ic.initial_step);
  const long long max_steps =
      v.integer("integrator.max_steps").value_or(static_cast<long long>(ic.max_steps));
  require(ic.rtol > 0.0 && ic.atol > 0.0, "integrator tolerances must be positive");
  require(ic.horizon_shell > 0.0, "integrator.horizon_shell must be positive");
  require(ic.r_max > 0.0 && ic.sigma_budget > 0.0 && ic.initial_step > 0.0,
          "integrator.r_max, sigma_budget and initial_step must be positive");
  require(max_steps > 0, "integrator.max_steps must be positive");
  ic.max_steps = static_cast<std::size_t>(max_steps);

  c.output.dir = v.text("output.dir").value_or(c.output.dir.string());
  c.output.shadow = v.text("output.shadow").value_or(c.output.shadow);
  c.output.image = v.text("output.image").value_or(c.output.image);
  c.output.manifest = v.text("output.manifest").value_or(c.output.manifest);
  c.output.separatrix = v.text("output.separatrix").value_or(c.output.separatrix);
  c.output.bifurcation_prefix =
      v.text("output.bifurcation_prefix").value_or(c.output.bifurcation_prefix);

  const long long shadow_samples = v.integer("shadow.samples").value_or(256);
  const long long curve_samples = v.integer("bifurcation.samples").value_or(512);
  require(shadow_samples >= 2 && shadow_samples <= 1000000, "shadow.samples must lie in 2..1e6");
  require(curve_samples >= 2 && curve_samples <= 1000000,
          "bifurcation.samples must lie in 2..1e6");
  c.shadow_samples = static_cast<std::size_t>(shadow_samples);
  c.curve_samples = static_cast<std::size_t>(curve_samples);

  c.lambda = v.number("classify.lambda");
  c.eta = v.number("classify.eta");
  c.r_start = v.number("classify.r_start");

  c.r_c = v.number("separatrix.r_c");
  c.separatrix_sigma = v.number("separatrix.sigma_max").value_or(c.separatrix_sigma);
  c.separatrix_theta0 = v.number("separatrix.theta0").value_or(c.separatrix_theta0);
  const long long sep_samples = v.integer("separatrix.samples").value_or(501);
  require(c.separatrix_sigma > 0.0, "separatrix.sigma_max must be positive");
  require(sep_samples >= 2 && sep_samples <= 10000000, "separatrix.samples must lie in 2..1e7");
  c.separatrix_samples = static_cast<std::size_t>(sep_samples);
  return c;
}

}  // namespace kerrshadow
