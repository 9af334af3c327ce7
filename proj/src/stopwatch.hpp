// Copyright 2026 The pst Authors.
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

#ifndef PST_SRC_STOPWATCH_HPP_
#define PST_SRC_STOPWATCH_HPP_

#include <chrono>

namespace pst {

// Pausable wall-clock accumulator so trace timings exclude the metric
// evaluation done between algorithm rounds.
class Stopwatch {
 public:
  void start() {
    start_ = std::chrono::steady_clock::now();
    running_ = true;
  }
  void stop() {
    if (!running_) return;
    total_ += std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start_)
                  .count();
    running_ = false;
  }
  double seconds() const { return total_; }

 private:
  std::chrono::steady_clock::time_point start_;
  double total_ = 0.0;
  bool running_ = false;
};

}  // namespace pst

#endif  // PST_SRC_STOPWATCH_HPP_
