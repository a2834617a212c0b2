#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace mflag::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitParse = 3;

struct CommonOptions {
  std::string path;
  bool records = false;
  bool force = false;
  std::optional<double> tol_structural;
  std::optional<double> tol_agree;
  std::optional<double> fd_step;
};

int cmd_validate(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_connection(const CommonOptions& opts, std::ostream& out, std::ostream& err);
/// backend: koszul | puttmann | nat-red | bi-invariant | auto
int cmd_curvature(const CommonOptions& opts, const std::string& backend, std::ostream& out,
                  std::ostream& err);
int cmd_parallel(const CommonOptions& opts, std::ostream& out, std::ostream& err);
/// Y, U: comma/space separated coordinates or a single basis name.
/// routes: "all" or a comma list of direct, closed, bi-invariant.
int cmd_flag(const CommonOptions& opts, const std::string& Y, const std::string& U,
             const std::string& routes, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommonOptions& opts, int samples, std::uint64_t seed,
              const std::string& routes, std::ostream& out, std::ostream& err);
int cmd_report(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_catalog_list(bool records, std::ostream& out);
int cmd_catalog_emit(const std::string& name, const std::string& output_path, std::ostream& out,
                     std::ostream& err);

/// Full command line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mflag::cli
