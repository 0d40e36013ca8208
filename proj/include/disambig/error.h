// Copyright 2026 The Disambig Authors.
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

#ifndef DISAMBIG_ERROR_H_
#define DISAMBIG_ERROR_H_

#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace disambig {

// Base of all recoverable errors raised by the library. The exit code is the
// one the command-line front end reports for this class of failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 2; }
};

class UsageError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 1; }
};

// Bad input data: malformed files, violated corpus invariants, unknown ids.
class DataError : public Error {
 public:
  using Error::Error;
};

// Corpus file problem tied to a 1-based line number (0 when not applicable).
class CorpusError : public DataError {
 public:
  CorpusError(std::size_t line, const std::string &what)
      : DataError(line > 0 ? "line " + std::to_string(line) + ": " + what
                           : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ProviderError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

// Transport failure after all retries were spent.
class ProviderIoError : public ProviderError {
 public:
  ProviderIoError(int attempts, const std::string &what)
      : ProviderError(what + " (after " + std::to_string(attempts) +
                      " attempts)"),
        attempts_(attempts) {}

  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

class MalformedResponseError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

class RateLimitError : public ProviderError {
 public:
  RateLimitError(std::chrono::seconds retry_after, const std::string &what)
      : ProviderError(what), retry_after_(retry_after) {}

  std::chrono::seconds retry_after() const { return retry_after_; }

 private:
  std::chrono::seconds retry_after_;
};

// A pipeline stage failed. Keeps the exit code of the underlying cause.
class StageError : public Error {
 public:
  StageError(const std::string &stage, const std::string &cause, int code)
      : Error(stage + ": " + cause), stage_(stage), code_(code) {}

  const std::string &stage() const { return stage_; }
  int exit_code() const override { return code_; }

 private:
  std::string stage_;
  int code_;
};

}  // namespace disambig

#endif  // DISAMBIG_ERROR_H_
