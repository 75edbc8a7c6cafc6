// Copyright 2026 The splicepaint Authors
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

#include "splicepaint/image.hpp"
#include "splicepaint/mask.hpp"

namespace splicepaint {

struct CompositeRequest {
  const Image& corrupted_input;
  const Image& network_output;
  const Mask& mask;
};

// Takes the network's prediction at damaged pixels and the input everywhere
// else. Both sources are copied bit-exactly.
Image composite(const CompositeRequest& request);

inline Image composite(const Image& corrupted_input, const Image& network_output, const Mask& mask) {
  return composite(CompositeRequest{corrupted_input, network_output, mask});
}

}  // namespace splicepaint
