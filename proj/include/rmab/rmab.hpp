// Copyright 2026 The rmab Authors. All rights reserved.
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

#ifndef RMAB_RMAB_HPP_
#define RMAB_RMAB_HPP_

#include "rmab/config.hpp"
#include "rmab/env.hpp"
#include "rmab/policies.hpp"
#include "rmab/random.hpp"
#include "rmab/regret.hpp"
#include "rmab/report.hpp"
#include "rmab/scenarios.hpp"
#include "rmab/sim.hpp"
#include "rmab/version.hpp"

#endif  // RMAB_RMAB_HPP_
