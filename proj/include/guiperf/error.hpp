/*
 * Copyright (C) 2026 The guiperf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GUIPERF_ERROR_HPP_
#define GUIPERF_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace guiperf {

// Raised for malformed inputs, violated preconditions and I/O failures.
// Messages name the offending entry (line, index, pair) where there is one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace guiperf

#endif  // GUIPERF_ERROR_HPP_
