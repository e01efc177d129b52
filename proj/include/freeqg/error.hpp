#pragma once

#include <stdexcept>
#include <string>

namespace freeqg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimension, index, parameters).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (polynomials, words, color patterns).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A computation would need a Weingarten table larger than the configured limit.
class ResourceError : public Error {
public:
    ResourceError(int k, int N, std::size_t table_size, int k_max)
        : Error("Weingarten table for k=" + std::to_string(k) + ", N=" + std::to_string(N) +
                " (" + std::to_string(table_size) + "x" + std::to_string(table_size) +
                ") exceeds kmax=" + std::to_string(k_max)),
          k_(k), n_(N), size_(table_size) {}

    int k() const noexcept { return k_; }
    int dimension() const noexcept { return n_; }
    std::size_t table_size() const noexcept { return size_; }

private:
    int k_;
    int n_;
    std::size_t size_;
};

/// Exact elimination hit a zero pivot.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

} // namespace freeqg
