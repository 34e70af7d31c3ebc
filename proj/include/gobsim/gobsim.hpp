// SPDX-License-Identifier: Apache-2.0
//
// gobsim - grid-of-beams mobility simulator for 5G NR macro deployments
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

#include "core.hpp"
#include "config.hpp"
#include "deployment.hpp"
#include "antenna.hpp"
#include "channel.hpp"
#include "mobility.hpp"
#include "rrm.hpp"
#include "handover.hpp"
#include "ue.hpp"
#include "metrics.hpp"
#include "engine.hpp"
#include "coverage.hpp"
