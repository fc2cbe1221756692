#pragma once

#include <stdexcept>
#include <string>

namespace felsim {

// Base for every error the simulator raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define FELSIM_DEFINE_ERROR(Name)            \
    class Name : public Error {              \
    public:                                  \
        using Error::Error;                  \
    }

FELSIM_DEFINE_ERROR(PastEvent);
FELSIM_DEFINE_ERROR(InvalidSpec);
FELSIM_DEFINE_ERROR(Unreachable);
FELSIM_DEFINE_ERROR(InvalidName);
FELSIM_DEFINE_ERROR(NoMatch);
FELSIM_DEFINE_ERROR(NoRoute);
FELSIM_DEFINE_ERROR(PinOverflow);
FELSIM_DEFINE_ERROR(UnknownDomain);
FELSIM_DEFINE_ERROR(InvalidHandover);
FELSIM_DEFINE_ERROR(IoError);
FELSIM_DEFINE_ERROR(InvariantViolation);

#undef FELSIM_DEFINE_ERROR

// Configuration problems carry the offending field path, e.g. "scenario.duration_ms".
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace felsim
