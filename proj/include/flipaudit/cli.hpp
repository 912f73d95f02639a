/*
 * Copyright 2026 The flipaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FLIPAUDIT_CLI_HPP_
#define FLIPAUDIT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace flipaudit {

/// Runs the command line front end. `args` excludes the program name.
/// Exit codes: 0 proportionate / fair, 1 error or usage, 2 review required,
/// 3 disproportionate or still unfair.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace flipaudit

#endif  // FLIPAUDIT_CLI_HPP_
