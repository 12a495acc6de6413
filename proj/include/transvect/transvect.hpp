// Copyright 2026 The transvect Authors
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

// Everything except the dense oracle (which needs Eigen): include
// "transvect/oracle.hpp" separately for that.

#pragma once

#include "transvect/circuit.hpp"
#include "transvect/code.hpp"
#include "transvect/decoder.hpp"
#include "transvect/errors.hpp"
#include "transvect/f2.hpp"
#include "transvect/lifted_product.hpp"
#include "transvect/noise_sim.hpp"
#include "transvect/pauli.hpp"
#include "transvect/propagate.hpp"
