#include "swg/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace swg {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(v) + "' is not a number");
  return x;
}

int parse_int(std::string_view key, std::string_view v) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(v) + "' is not an integer");
  return x;
}

bool parse_on_off(std::string_view key, std::string_view v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("key '" + std::string(key) + "': expected on or off, got '" + std::string(v) + "'");
}

std::vector<int> parse_levels(std::string_view key, std::string_view v) {
  std::vector<int> levels;
  while (!v.empty()) {
    const auto comma = v.find(',');
    levels.push_back(parse_int(key, trim(v.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  if (levels.empty()) throw ConfigError("key '" + std::string(key) + "': empty level list");
  return levels;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

void apply_key(RunConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  StudyConfig& s = c.study;
  if (key == "case") {
    s.case_name = std::string(value);
  } else if (key == "mesh") {
    s.family = parse_family(value);
  } else if (key == "levels") {
    s.levels = parse_levels(key, value);
  } else if (key == "kappa") {
    s.stabilization.kappa = parse_double(key, value);
  } else if (key == "boundary-stab") {
    s.stabilization.boundary_tangential = parse_on_off(key, value);
  } else if (key == "formulation") {
    s.formulation = parse_formulation(value);
  } else if (key == "E") {
    s.case_options.E = parse_double(key, value);
  } else if (key == "nu") {
    s.case_options.nu = parse_double(key, value);
  } else if (key == "tol") {
    s.solver.tol = parse_double(key, value);
  } else if (key == "out") {
    c.out_dir = std::string(value);
  } else if (key == "h1-norm") {
    s.h1 = parse_h1_norm(value);
  } else if (key == "h-scale") {
    if (value == "local") s.stabilization.h_scale = HScale::local;
    else if (value == "global") s.stabilization.h_scale = HScale::global;
    else throw ConfigError("key 'h-scale': expected local or global, got '" + std::string(value) + "'");
  } else if (key == "solver") {
    if (value == "direct") s.solver.kind = SolverKind::direct;
    else if (value == "cg") s.solver.kind = SolverKind::cg;
    else throw ConfigError("key 'solver': expected direct or cg, got '" + std::string(value) + "'");
  } else if (key == "traction") {
    s.case_options.traction = parse_traction_mode(value);
  } else if (key == "vtk") {
    c.write_vtk = parse_on_off(key, value);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& config, std::string_view text, const std::string& source) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key=value, got '" + std::string(line) + "'");
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + "missing key before '='");
    try {
      apply_key(config, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(config, ss.str(), path.string());
}

void validate(const RunConfig& config) {
  const StudyConfig& s = config.study;
  if (s.levels.empty()) throw ConfigError("levels: at least one level is required");
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    if (s.levels[i] < 1) throw ConfigError("levels: every n must be >= 1");
    if (i > 0 && s.levels[i] <= s.levels[i - 1]) throw ConfigError("levels: must be strictly increasing");
  }
  if (!(s.stabilization.kappa >= 0.0)) throw ConfigError("kappa: must be >= 0");
  if (!(s.solver.tol > 0.0) || s.solver.tol > 1e-6) throw ConfigError("tol: must lie in (0, 1e-6]");
  if (s.solver.kind == SolverKind::cg && s.formulation != Formulation::primal)
    throw ConfigError("solver: cg needs formulation=primal");
  const AnalyticCase c = get_case(s.case_name, s.case_options);
  if (c.dim != dimension(s.family))
    throw ConfigError("mesh: " + to_string(s.family) + " is " + std::to_string(dimension(s.family)) + "D but case " +
                      c.name + " is " + std::to_string(c.dim) + "D");
}

int run(const RunConfig& config, std::ostream& log) {
  validate(config);
  const StudyConfig& s = config.study;
  const AnalyticCase c = get_case(s.case_name, s.case_options);
  std::filesystem::create_directories(config.out_dir);

  auto on_mesh = [&](const PolytopalMesh& mesh, const LevelOutcome& o) {
    log << "level n=" << o.n << " elements=" << o.num_elements << " dof=" << o.record.dof
        << " status=" << to_string(o.report.status) << " residual=" << fmt("%.2e", o.report.relative_residual);
    if (o.probe) log << " probe_uy=" << fmt("%.6f", o.probe->y());
    if (!o.report.message.empty()) log << " (" << o.report.message << ")";
    log << '\n';
    if (config.write_vtk && !o.record.singular)
      export_vtk(mesh, o.solution, config.out_dir / ("level_" + std::to_string(o.n) + ".vtk"));
  };
  const StudyResult result = run_study(s, on_mesh);

  if (c.has_exact) export_csv(result.errors, config.out_dir / "errors.csv");
  if (c.probe) {
    std::ofstream out(config.out_dir / "probe.csv");
    if (!out) throw Error("cannot write " + (config.out_dir / "probe.csv").string());
    out << "n,dof,u_x,u_y,u_z\n";
    for (const auto& l : result.levels) {
      out << l.n << ',' << l.record.dof << ',';
      if (!l.probe) {
        out << "-,-,-\n";
        continue;
      }
      out << fmt("%.6e", l.probe->x()) << ',' << fmt("%.6e", l.probe->y()) << ',' << fmt("%.6e", l.probe->z()) << '\n';
    }
  }

  int singular = 0;
  for (const auto& l : result.levels) singular += l.record.singular ? 1 : 0;
  log << "summary case=" << c.name << " mesh=" << to_string(s.family) << " formulation=" << to_string(s.formulation)
      << " kappa=" << s.stabilization.kappa << " levels=" << result.levels.size() << " singular=" << singular;
  if (c.has_exact && !result.errors.levels.empty()) {
    const LevelRecord& last = result.errors.levels.back();
    if (last.r_l2) log << " final_rate_l2=" << fmt("%.4f", *last.r_l2);
  }
  if (c.probe) {
    log << " tip_uy(" << c.probe->x() << "," << c.probe->y() << ")=";
    for (std::size_t i = 0; i < result.levels.size(); ++i) {
      const auto& l = result.levels[i];
      log << (i ? "," : "") << l.n << ':' << (l.probe ? fmt("%.6f", l.probe->y()) : std::string("-"));
    }
    log << " reference=" << c.probe_reference;
  }
  if (result.all_singular()) log << " note=all levels singular, no results";
  else if (singular > 0) log << " note=singular levels reported as '-'";
  log << '\n';
  return result.all_singular() ? kExitAllSingular : kExitOk;
}

}  // namespace swg
