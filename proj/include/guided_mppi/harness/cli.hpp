// Copyright 2026 The Guided MPPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GUIDED_MPPI_HARNESS_CLI_HPP_
#define GUIDED_MPPI_HARNESS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace guided_mppi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRunError = 3;

/// Entry point of the `guided_mppi` tool. `config_dir` holds the default
/// config of each subcommand.
int cli_main(const std::vector<std::string>& args, const std::string& config_dir, std::ostream& out,
             std::ostream& err);

}  // namespace guided_mppi

#endif  // GUIDED_MPPI_HARNESS_CLI_HPP_
