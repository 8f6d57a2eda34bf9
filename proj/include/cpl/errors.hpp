#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpl {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed formula / proof / table text.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected = {});

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// A probability or threshold outside [0,1], or an otherwise invalid value.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Enumeration refused because the support is larger than the configured cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// The MNF strategy was requested under a non-uniform measure.
class UnsupportedStrategy : public Error {
public:
    using Error::Error;
};

/// A CPF clause with a repeated atom or a complementary pair.
class MalformedClause : public Error {
public:
    using Error::Error;
};

/// A disjunction passed as MNF whose clauses are not pairwise contradictory.
class MalformedMnf : public Error {
public:
    using Error::Error;
};

/// Exact compilation requested for a non-dyadic probability.
class CompilationError : public Error {
public:
    using Error::Error;
};

} // namespace cpl
