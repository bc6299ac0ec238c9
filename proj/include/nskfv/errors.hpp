#ifndef NSKFV_ERRORS_HPP
#define NSKFV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nskfv {

/// Coarse error category, mirrored by the C API status codes and the CLI
/// exit codes: validation = 1, runtime = 2, io = 3.
enum class ErrorKind { Validation = 1, Runtime = 2, Io = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Bad configuration, bad arguments, failed verification preconditions.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(ErrorKind::Validation, msg) {}
};

/// A density cell at or below the positivity floor.
struct PositivityError : Error {
    explicit PositivityError(const std::string& msg) : Error(ErrorKind::Runtime, msg) {}
};

/// max_steps exhausted before reaching t_end.
struct StepBudgetError : Error {
    explicit StepBudgetError(const std::string& msg) : Error(ErrorKind::Runtime, msg) {}
};

/// Recorded discrete energy grew beyond the integrator tolerance.
struct EnergyGrowthError : Error {
    explicit EnergyGrowthError(const std::string& msg) : Error(ErrorKind::Runtime, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ErrorKind::Io, msg) {}
};

} // namespace nskfv

#endif
