// Copyright 2026 The zgptda Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zgptda {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dataset or side file could not be read. `line()` is 1-based, 0 when the
/// failure is not tied to a line (missing file, I/O error).
class LoadError : public Error {
 public:
  LoadError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Too few usable observations for a law. Callers treat the law as
/// unavailable for that text rather than failing.
class NotFittable : public Error {
 public:
  using Error::Error;
};

/// No law could be fitted, so no Z-number exists.
class NoSignal : public Error {
 public:
  using Error::Error;
};

/// An embedding provider failed on a text unit.
class ProviderError : public Error {
 public:
  ProviderError(const std::string& what, std::size_t unit_index)
      : Error(what), unit_index_(unit_index) {}
  std::size_t unit_index() const noexcept { return unit_index_; }

 private:
  std::size_t unit_index_;
};

}  // namespace zgptda
