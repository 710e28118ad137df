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

// Transcendental functions built only from IEEE-754 basic operations, so
// encoder and decoder derive identical probability tables regardless of the
// platform libm. Requires compiling without floating-point contraction.

#ifndef BPSC_DET_MATH_H_
#define BPSC_DET_MATH_H_

namespace bpsc {

// e^x, relative error below 1e-15.
double DetExp(double x);

// Complementary error function, fractional error below 1.2e-7.
double DetErfc(double x);

}  // namespace bpsc

#endif  // BPSC_DET_MATH_H_
