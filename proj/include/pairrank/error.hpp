#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairrank {

using Index = std::size_t;

// Base class for every error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidData : public Error {
public:
    using Error::Error;
};

class SelfMatch : public InvalidData {
public:
    using InvalidData::InvalidData;
};

class NegativeCount : public InvalidData {
public:
    using InvalidData::InvalidData;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class InvalidStrengths : public Error {
public:
    using Error::Error;
};

// The interaction digraph has more than one strongly connected component, so
// no maximum-likelihood estimate exists.
class NotStronglyConnected : public Error {
public:
    NotStronglyConnected(std::string what, std::vector<std::vector<Index>> components)
        : Error(std::move(what)), components_(std::move(components)) {}

    const std::vector<std::vector<Index>>& components() const noexcept { return components_; }

private:
    std::vector<std::vector<Index>> components_;
};

// A coordinate update would leave the open interval (0, inf).
class DegenerateStrength : public Error {
public:
    DegenerateStrength(std::string what, Index player) : Error(std::move(what)), player_(player) {}

    Index player() const noexcept { return player_; }

private:
    Index player_;
};

class DegenerateNu : public Error {
public:
    using Error::Error;
};

class MaxSweepsExceeded : public Error {
public:
    using Error::Error;
};

class RedrawLimitExceeded : public Error {
public:
    using Error::Error;
};

class NotConverged : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string what, std::size_t line) : Error(std::move(what)), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace pairrank
