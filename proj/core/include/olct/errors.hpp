#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace olct {

/// Base class of every domain error thrown by this library. `kind()` is a
/// stable machine-readable tag (used e.g. in experiment failure rows).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define OLCT_DEFINE_ERROR(NAME)                                        \
    class NAME : public Error {                                        \
    public:                                                            \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

OLCT_DEFINE_ERROR(DeterminantError);
OLCT_DEFINE_ERROR(DegenerateParameterError);
OLCT_DEFINE_ERROR(DegenerateGridError);
OLCT_DEFINE_ERROR(GridMismatch);
OLCT_DEFINE_ERROR(ZeroSignal);
OLCT_DEFINE_ERROR(ZeroFactor);
OLCT_DEFINE_ERROR(InsufficientDiversity);
OLCT_DEFINE_ERROR(WindowVanishes);
OLCT_DEFINE_ERROR(NegativeEnergy);
OLCT_DEFINE_ERROR(NyquistViolation);
OLCT_DEFINE_ERROR(AnchorDegenerate);
OLCT_DEFINE_ERROR(MissingLag);
OLCT_DEFINE_ERROR(InvalidSpec);

#undef OLCT_DEFINE_ERROR

}  // namespace olct
