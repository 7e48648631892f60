// Copyright 2026 The cvx Authors
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

#include "cvx/channels.hpp"
#include "cvx/ensembles.hpp"
#include "cvx/errors.hpp"
#include "cvx/experiments.hpp"
#include "cvx/fock.hpp"
#include "cvx/gaussify.hpp"
#include "cvx/io.hpp"
#include "cvx/measures.hpp"
#include "cvx/phase_space.hpp"
