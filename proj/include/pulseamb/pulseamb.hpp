// Copyright 2026 The pulseamb Authors
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

#pragma once

#include "pulseamb/errors.hpp"
#include "pulseamb/profiles.hpp"
#include "pulseamb/quadrature.hpp"
#include "pulseamb/ambiguity.hpp"
#include "pulseamb/homodyne.hpp"
#include "pulseamb/capacity.hpp"
#include "pulseamb/random.hpp"
#include "pulseamb/parallel.hpp"
#include "pulseamb/stochastic.hpp"

namespace pulseamb {

inline constexpr const char* version = "0.1.0";

}  // namespace pulseamb
