#pragma once

#include <string>

#include "logistic/run_config.hpp"

namespace logistic {

// Exit codes: 0 success, 1 mathematical failure (hypothesis or convergence),
// 2 usage error. Each command writes its artifacts plus manifest.json.
int cmd_validate(const RunConfig& cfg, const std::string& config_path,
                 const std::string& out_dir);
int cmd_eig(const RunConfig& cfg, const std::string& config_path,
            const std::string& out_dir);
int cmd_curve(const RunConfig& cfg, const std::string& config_path,
              const std::string& out_dir);
int cmd_solve(const RunConfig& cfg, const std::string& config_path,
              const std::string& out_dir);
int cmd_sweep(const RunConfig& cfg, const std::string& config_path,
              const std::string& out_dir);
int cmd_verify(const RunConfig& cfg, const std::string& config_path,
               const std::string& in_dir, const std::string& out_dir);

int run_cli(int argc, char** argv);

}  // namespace logistic
