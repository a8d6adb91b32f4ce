#pragma once
#include <stdexcept>
#include <string>

namespace tflg {

class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An input violated a documented precondition.
class precondition_error : public error
{
public:
    using error::error;
};

/// An iterative kernel failed to converge; carries the last residual.
class numerical_error : public error
{
    double _residual;

public:
    numerical_error(const std::string& msg, double residual)
        : error(msg + " (residual " + std::to_string(residual) + ")"),
          _residual(residual)
    {}

    double residual() const noexcept { return _residual; }
};

/// Frame operator is singular to working precision.
class not_a_frame_error : public error
{
public:
    using error::error;
};

/// Malformed configuration; the message names the offending field path.
class config_error : public error
{
public:
    using error::error;
};

} // namespace tflg
