// Copyright 2026 The hcflow Authors.
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

#include "hcflow/conjectures.hpp"
#include "hcflow/flow_core.hpp"
#include "hcflow/hypercube.hpp"
#include "hcflow/io.hpp"
#include "hcflow/lr_routing.hpp"
#include "hcflow/matched_pairs.hpp"
#include "hcflow/matching.hpp"
#include "hcflow/monotonicity.hpp"
#include "hcflow/network.hpp"
#include "hcflow/rational.hpp"
#include "hcflow/search.hpp"
