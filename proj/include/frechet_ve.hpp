// Copyright 2026 The frechet-ve Authors
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

#include "frechet_ve/discrete_frechet.hpp"
#include "frechet_ve/elevation.hpp"
#include "frechet_ve/frechet_driver.hpp"
#include "frechet_ve/geometry.hpp"
#include "frechet_ve/graph_search.hpp"
#include "frechet_ve/io.hpp"
#include "frechet_ve/morphing.hpp"
#include "frechet_ve/simplification.hpp"
#include "frechet_ve/sweep.hpp"
#include "frechet_ve/ve_frechet.hpp"
