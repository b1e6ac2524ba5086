#pragma once

#include "swg/study.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace swg {

struct RunConfig {
  StudyConfig study;
  std::filesystem::path out_dir = "swg_out";
  bool write_vtk = true;
};

/// Keys accepted in config files; flags use the same names with a leading "--".
/// case mesh levels kappa boundary-stab formulation E nu tol out h1-norm h-scale solver traction vtk
void apply_key(RunConfig& config, std::string_view key, std::string_view value);

/// Flat key=value text; '#' starts a comment, blank lines are skipped.
/// Errors name the source and line: "<source>:<line>: <message>".
void apply_config_text(RunConfig& config, std::string_view text, const std::string& source = "config");
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Levels strictly increasing and positive, kappa >= 0, mesh dimension matches the case.
void validate(const RunConfig& config);

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAllSingular = 3;

/// Runs the study, writes <out>/errors.csv and <out>/level_<n>.vtk, prints per-level lines and one
/// summary line to `log`. Returns kExitAllSingular when no level solved.
int run(const RunConfig& config, std::ostream& log);

}  // namespace swg
