#pragma once

#include <stdexcept>
#include <string>

namespace ctrump {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: malformed numbers, distributions that do not sum to one,
/// arguments outside an operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A bounded search ran out of budget. `stage()` names the search.
class SearchExhausted : public Error {
public:
    SearchExhausted(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace ctrump
