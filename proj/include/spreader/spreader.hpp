// Copyright 2026 The Spreader Authors.
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

#ifndef SPREADER_SPREADER_HPP_
#define SPREADER_SPREADER_HPP_

#include "spreader/analysis.hpp"
#include "spreader/corpus.hpp"
#include "spreader/error.hpp"
#include "spreader/evaluation.hpp"
#include "spreader/label.hpp"
#include "spreader/model_io.hpp"
#include "spreader/models.hpp"
#include "spreader/preprocess.hpp"
#include "spreader/stopwords.hpp"
#include "spreader/tokenizer.hpp"
#include "spreader/vectorize.hpp"

#endif  // SPREADER_SPREADER_HPP_
