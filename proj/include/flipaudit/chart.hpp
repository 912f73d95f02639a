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

#ifndef FLIPAUDIT_CHART_HPP_
#define FLIPAUDIT_CHART_HPP_

#include <string>

#include "flipaudit/report.hpp"

namespace flipaudit {

/// Smallest display cap for infinite bars in the proportionality panel.
inline constexpr double kMinInfinityCap = 3.0;
/// Infinite bars are drawn at this multiple of the panel's largest finite
/// value (but never below kMinInfinityCap).
inline constexpr double kInfinityCapFactor = 5.0;

/// Display cap for the proportionality panel of `report`.
double infinity_cap(const ProportionalityReport& report);

/// Three stacked horizontal-bar panels: overall FR/HFP (percent), the same
/// per group, and the eight proportionality metrics. Bars are filled with
/// their band color; infinite values are clamped to the cap and labeled ∞.
/// Output depends only on the report.
std::string render_chart_svg(const ProportionalityReport& report);

/// Writes render_chart_svg to `out_path`; std::runtime_error if unwritable.
void emit_chart(const ProportionalityReport& report, const std::string& out_path);

}  // namespace flipaudit

#endif  // FLIPAUDIT_CHART_HPP_
