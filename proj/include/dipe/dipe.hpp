// Copyright 2026 The dipesim Authors
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

#include "dipe/analytics.hpp"
#include "dipe/bits.hpp"
#include "dipe/classical_fn.hpp"
#include "dipe/clifford.hpp"
#include "dipe/ensembles.hpp"
#include "dipe/errors.hpp"
#include "dipe/experiments.hpp"
#include "dipe/parallel.hpp"
#include "dipe/pauli.hpp"
#include "dipe/protocol.hpp"
#include "dipe/rng.hpp"
#include "dipe/states.hpp"
#include "dipe/tensor_net.hpp"
