// Copyright 2026 driftsim contributors
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

#include "driftsim/bounds.hpp"
#include "driftsim/channels.hpp"
#include "driftsim/errors.hpp"
#include "driftsim/experiment.hpp"
#include "driftsim/hamiltonian.hpp"
#include "driftsim/io.hpp"
#include "driftsim/metrics.hpp"
#include "driftsim/pauli.hpp"
#include "driftsim/sampling.hpp"
