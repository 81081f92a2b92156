// Copyright 2026 The Relin Authors
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

#ifndef RELIN_RATIONAL_H_
#define RELIN_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace relin {

using Rational = boost::rational<std::int64_t>;

// Accepts "7", "7/3" and finite decimals such as "0.25". Throws
// Error(kParseError) on anything else.
Rational ParseRational(std::string_view text);

// "7" for integers, "7/3" otherwise.
std::string FormatRational(const Rational& value);

}  // namespace relin

#endif  // RELIN_RATIONAL_H_
