// SPDX-License-Identifier: Apache-2.0
//
// twr: two-way amplify-and-forward relay beamforming toolkit
// Copyright (C) 2026 The twr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "twr/analysis.hpp"
#include "twr/beamform.hpp"
#include "twr/channel.hpp"
#include "twr/curve.hpp"
#include "twr/errors.hpp"
#include "twr/mc.hpp"
#include "twr/parallel.hpp"
#include "twr/quadrature.hpp"
#include "twr/rng.hpp"
#include "twr/specfun.hpp"

namespace twr {
inline constexpr const char *kVersion = "1.0.0";
}
