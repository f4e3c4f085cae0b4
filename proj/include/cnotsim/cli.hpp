// Copyright 2026 The cnotsim Authors
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

#ifndef CNOTSIM_CLI_HPP
#define CNOTSIM_CLI_HPP

#include <string>
#include <vector>

namespace cnotsim {

/// Command-line entry point. Subcommands: truth-table, entangle, hom-scan,
/// noise, feed-forward, dump-circuit. Returns 0 on success, 2 on a config
/// error and 3 on an internal invariant violation.
int cli_main(const std::vector<std::string>& args);

}  // namespace cnotsim

#endif
