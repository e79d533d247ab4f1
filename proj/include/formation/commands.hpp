#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace formation {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;  // unreadable/invalid scenario
inline constexpr int kExitAbort = 2;   // simulation aborted mid-run
inline constexpr int kExitAudit = 3;   // an audit exceeded its tolerance

int cmd_validate(const std::filesystem::path& scenario_path, std::ostream& out,
                 std::ostream& err);

int cmd_run(const std::filesystem::path& scenario_path, const std::filesystem::path& out_dir,
            const std::vector<std::string>& overrides, std::ostream& out, std::ostream& err);

int cmd_repro_paper(const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

// which: energy | power | rank | gradients.
int cmd_audit(const std::filesystem::path& scenario_path, const std::string& which,
              const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

}  // namespace formation
