// Copyright 2026 The qsurf Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "qsurf/dataset.hpp"
#include "qsurf/errors.hpp"
#include "qsurf/metrics.hpp"
#include "qsurf/qforest.hpp"
#include "qsurf/runner.hpp"
#include "qsurf/serialization.hpp"
#include "qsurf/statevector.hpp"
#include "qsurf/variational.hpp"
