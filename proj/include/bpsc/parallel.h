// Copyright 2026 The BPSC Authors
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

#ifndef BPSC_PARALLEL_H_
#define BPSC_PARALLEL_H_

#include <cstdint>

namespace bpsc {

// Pixel loops smaller than this run on the calling thread; forking a team
// costs more than the work.
inline constexpr int64_t kParallelThreshold = 1 << 15;

// Number of OpenMP threads available (1 when built without OpenMP).
int MaxThreads();

}  // namespace bpsc

#endif  // BPSC_PARALLEL_H_
