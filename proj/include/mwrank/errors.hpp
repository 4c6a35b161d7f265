#pragma once

#include <stdexcept>
#include <string>

namespace mw {

enum class ErrorKind {
    Context,
    UndefinedDegree,
    Hypothesis,
    Parse,
    Degenerate,
    Minimality,
    Dossier,
    Unsupported,
    NotSingular,
    NotQuasismooth,
    Range,
    Manifest,
    Internal,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mw
