#pragma once

#include <stdexcept>
#include <string>

namespace omniso {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// numerical failures (CLI exit code 2)

struct DivergenceError : Error {
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

struct StepSizeUnderflow : Error {
    explicit StepSizeUnderflow(const std::string& msg) : Error(msg) {}
};

struct SingularResponse : Error {
    explicit SingularResponse(const std::string& msg) : Error(msg) {}
};

struct NoSignChange : Error {
    explicit NoSignChange(const std::string& msg) : Error(msg) {}
};

struct NoInteriorMaximum : Error {
    explicit NoInteriorMaximum(const std::string& msg) : Error(msg) {}
};

struct NoContrastPeak : Error {
    explicit NoContrastPeak(const std::string& msg) : Error(msg) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& msg) : Error(msg) {}
};

struct NotApplicable : Error {
    explicit NotApplicable(const std::string& msg) : Error(msg) {}
};

struct BackwardThresholdUndefined : Error {
    explicit BackwardThresholdUndefined(const std::string& msg) : Error(msg) {}
};

// input failures (CLI exit code 1)

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ValidationError : Error {
    std::string key;
    ValidationError(const std::string& key_, const std::string& msg)
        : Error(key_ + ": " + msg), key(key_) {}
};

struct UnitError : Error {
    explicit UnitError(const std::string& msg) : Error(msg) {}
};

}  // namespace omniso
