// Copyright 2026 The gmeact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace gmeact::tol {

// Single table of numerical thresholds shared by every module.
inline constexpr double kHermiticity = 1e-10;
inline constexpr double kPsd = -1e-10;
inline constexpr double kResidual = 1e-10;
inline constexpr double kClosure = 1e-9;       // graph-basis closure under partial transpose
inline constexpr double kLpFeasibility = 1e-9;
inline constexpr double kLpOptimality = 1e-9;
inline constexpr double kZeroNorm = 1e-14;     // projected traces below this are "annihilated"
inline constexpr double kDetection = 1e-9;     // negative values must beat this to count as detection
inline constexpr double kLogDetection = 1e-13; // log-space GHH comparisons; keeps closed-form boundaries to ~1e-14
inline constexpr double kSeesawConvergence = 1e-12;

}  // namespace gmeact::tol
