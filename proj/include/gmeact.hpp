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

#include "gmeact/criteria.hpp"
#include "gmeact/errors.hpp"
#include "gmeact/graphs.hpp"
#include "gmeact/ice.hpp"
#include "gmeact/io.hpp"
#include "gmeact/linalg.hpp"
#include "gmeact/lp.hpp"
#include "gmeact/maps.hpp"
#include "gmeact/optimize.hpp"
#include "gmeact/parallel.hpp"
#include "gmeact/ppt.hpp"
#include "gmeact/random.hpp"
#include "gmeact/sampling.hpp"
#include "gmeact/seesaw.hpp"
#include "gmeact/states.hpp"
#include "gmeact/tolerances.hpp"
