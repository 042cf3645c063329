#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace autores {

/// An argument lies outside the domain of the requested operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller violated a pairing contract between inputs (e.g. a series built for another root).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An iterative procedure failed; carries the interval it was working on when known.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what,
                            double lo = std::numeric_limits<double>::quiet_NaN(),
                            double hi = std::numeric_limits<double>::quiet_NaN())
        : std::runtime_error(what), lo_(lo), hi_(hi) {}

    [[nodiscard]] double bracket_lo() const noexcept { return lo_; }
    [[nodiscard]] double bracket_hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

} // namespace autores
