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

#include "splicepaint/composite.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace splicepaint {

Image composite(const CompositeRequest& req) {
  const Image& in = req.corrupted_input;
  const Image& net = req.network_output;
  if (!in.same_size(net) || in.height() != req.mask.height() || in.width() != req.mask.width()) {
    throw std::invalid_argument(fmt::format("composite: size mismatch input {}x{}, output {}x{}, mask {}x{}",
                                            in.height(), in.width(), net.height(), net.width(),
                                            req.mask.height(), req.mask.width()));
  }
  Image out = in;
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x)
      if (req.mask.damaged(y, x))
        for (int c = 0; c < Image::kChannels; ++c) out.at(y, x, c) = net.at(y, x, c);
  return out;
}

}  // namespace splicepaint
