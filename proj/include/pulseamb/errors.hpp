// Copyright 2026 The pulseamb Authors
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

#include <atomic>
#include <iostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pulseamb {

/// Raised when an argument violates an operation's precondition.
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when adaptive quadrature exhausts its subdivision budget.
/// Carries the best estimate reached and its error estimate.
template <typename Value>
class basic_quadrature_failure : public std::runtime_error {
public:
    basic_quadrature_failure(const std::string& what, Value best, double error)
        : std::runtime_error(what), best_(best), error_(error) {}

    Value best_estimate() const noexcept { return best_; }
    double achieved_error() const noexcept { return error_; }

private:
    Value best_;
    double error_;
};

using warning_handler = void (*)(std::string_view);

namespace detail {

inline void default_warning_handler(std::string_view msg) {
    std::clog << "pulseamb: warning: " << msg << '\n';
}

inline std::atomic<warning_handler>& warning_slot() {
    static std::atomic<warning_handler> slot{&default_warning_handler};
    return slot;
}

}  // namespace detail

/// Installs a process-wide sink for non-fatal diagnostics. Passing nullptr
/// silences warnings. Returns the previous handler.
inline warning_handler set_warning_handler(warning_handler handler) {
    return detail::warning_slot().exchange(handler);
}

inline void warn(std::string_view msg) {
    if (auto* h = detail::warning_slot().load()) h(msg);
}

}  // namespace pulseamb
