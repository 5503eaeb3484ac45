// Copyright 2026 The lightcone Authors
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

#include "lightcone/agents.hpp"
#include "lightcone/bell.hpp"
#include "lightcone/causal.hpp"
#include "lightcone/errors.hpp"
#include "lightcone/linalg.hpp"
#include "lightcone/microcausality.hpp"
#include "lightcone/optimize.hpp"
#include "lightcone/quantum.hpp"
#include "lightcone/spacetime.hpp"
