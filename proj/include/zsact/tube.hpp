// Copyright 2026 The zsact Authors.
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

#ifndef ZSACT_TUBE_HPP_
#define ZSACT_TUBE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace zsact {

// Axis-aligned box in pixels.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double area() const { return width * height; }
};

struct TubeFrame {
  std::int64_t frame = 0;
  Box box;
};

double box_iou(const Box& a, const Box& b);

// Throws InputError unless frames are nonempty, strictly increasing, and
// every box has positive finite extent.
void validate_tube_frames(std::span<const TubeFrame> frames);

}  // namespace zsact

#endif  // ZSACT_TUBE_HPP_
