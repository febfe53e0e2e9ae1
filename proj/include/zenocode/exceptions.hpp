// Copyright 2026 The Zenocode Authors
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

#include <stdexcept>
#include <string>

namespace zenocode {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ZeroDetuning : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class ZeroNormState : public Error {
 public:
  using Error::Error;
};

class NotDensityMatrix : public Error {
 public:
  using Error::Error;
};

class IOError : public Error {
 public:
  using Error::Error;
};

// Iterative searches throw this after exhausting their iteration budget.
// Subclasses attach the best iterate so callers can still persist it.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, int iterations, double residual)
      : Error(what), iterations(iterations), residual(residual) {}

  int iterations;
  double residual;
};

}  // namespace zenocode
