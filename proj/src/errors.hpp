#pragma once

#include <stdexcept>
#include <string>

namespace divtr {

enum class ErrorCode {
    invalid_argument,
    unknown_function,
    out_of_domain,
    budget_exhausted,
    insufficient_budget,
    singular_kernel,
    dimension_mismatch,
    empty_input,
    unsupported_dim,
    io_error,
    parse_error,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline Error budget_exhausted(const std::string& what) { return {ErrorCode::budget_exhausted, what}; }
inline Error out_of_domain(const std::string& what) { return {ErrorCode::out_of_domain, what}; }
inline Error insufficient_budget(const std::string& what) { return {ErrorCode::insufficient_budget, what}; }
inline Error singular_kernel(const std::string& what) { return {ErrorCode::singular_kernel, what}; }
inline Error dimension_mismatch(const std::string& what) { return {ErrorCode::dimension_mismatch, what}; }
inline Error empty_input(const std::string& what) { return {ErrorCode::empty_input, what}; }

}  // namespace divtr
