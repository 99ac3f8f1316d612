// Copyright 2026 The adgstego Authors.
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

#ifndef ADGSTEGO_ADGSTEGO_HPP
#define ADGSTEGO_ADGSTEGO_HPP

#include "adgstego/adg.hpp"
#include "adgstego/baselines.hpp"
#include "adgstego/bench.hpp"
#include "adgstego/bitio.hpp"
#include "adgstego/codec.hpp"
#include "adgstego/common.hpp"
#include "adgstego/config.hpp"
#include "adgstego/corpus.hpp"
#include "adgstego/distribution.hpp"
#include "adgstego/divergence.hpp"
#include "adgstego/language_model.hpp"
#include "adgstego/metrics.hpp"
#include "adgstego/provider.hpp"
#include "adgstego/random.hpp"

#endif  // ADGSTEGO_ADGSTEGO_HPP
