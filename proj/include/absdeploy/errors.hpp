// SPDX-License-Identifier: Apache-2.0
//
// absdeploy - gradient-based deployment of airborne base stations
// Copyright (C) 2026 The absdeploy authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace absdeploy {

// Base class for every error raised by the library. The category decides the
// process exit status used by the command line tool.
class Error : public std::runtime_error {
public:
    enum class Category { usage, validation, numerical };

    Error(Category category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& what) : Error(Category::validation, what) {}
};

// Grid specification does not fit in the scene.
class InvalidSpecError : public Error {
public:
    explicit InvalidSpecError(const std::string& what) : Error(Category::validation, what) {}
};

// Rejection sampling ran out of attempts.
class InfeasibleInitError : public Error {
public:
    explicit InfeasibleInitError(const std::string& what) : Error(Category::validation, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(Category::numerical, what) {}
};

// Malformed file or schema violation. `path()` is a JSON pointer (or a byte
// offset description for binary files) to the offending element.
class ParseError : public Error {
public:
    ParseError(std::string path, const std::string& what)
        : Error(Category::validation, path.empty() ? what : path + ": " + what),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// An ABS has no cell with coverage, so its effective SIR is undefined.
class NoCoverageError : public Error {
public:
    NoCoverageError(int abs_index, const std::string& what)
        : Error(Category::numerical, what), abs_index_(abs_index) {}

    int abs_index() const noexcept { return abs_index_; }

private:
    int abs_index_;
};

class UndefinedMetricError : public Error {
public:
    explicit UndefinedMetricError(const std::string& what) : Error(Category::validation, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(Category::numerical, what) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(Category::numerical, what) {}
};

class DegenerateDropError : public Error {
public:
    explicit DegenerateDropError(const std::string& what) : Error(Category::validation, what) {}
};

}  // namespace absdeploy
