#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace axrel {

/// Base class of every error raised by the workbench.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define AXREL_DEFINE_ERROR(Name)                  \
    class Name : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    }

// field
AXREL_DEFINE_ERROR(DivisionByZero);
AXREL_DEFINE_ERROR(NegativeRadicand);
AXREL_DEFINE_ERROR(LiteralError);

// syntax
AXREL_DEFINE_ERROR(UnknownTheory);
AXREL_DEFINE_ERROR(NotQuantityVariable);

// model / kinematics
AXREL_DEFINE_ERROR(SuperluminalObserver);
AXREL_DEFINE_ERROR(SuperluminalVelocity);
AXREL_DEFINE_ERROR(NotAnObserver);
AXREL_DEFINE_ERROR(NotInertialObserver);
AXREL_DEFINE_ERROR(InvalidWorldline);
AXREL_DEFINE_ERROR(ConfigurationUnrealizable);
AXREL_DEFINE_ERROR(FormatError);

// semantics
AXREL_DEFINE_ERROR(UnboundVariable);
AXREL_DEFINE_ERROR(UnknownAxiom);

// accel
AXREL_DEFINE_ERROR(SuperluminalSegment);
AXREL_DEFINE_ERROR(DomainError);
AXREL_DEFINE_ERROR(NotDifferentiable);
AXREL_DEFINE_ERROR(NoReunion);
AXREL_DEFINE_ERROR(InvalidConfig);

// genrel
AXREL_DEFINE_ERROR(DegenerateMetric);
AXREL_DEFINE_ERROR(NotTimelike);
AXREL_DEFINE_ERROR(NoMeeting);
AXREL_DEFINE_ERROR(LeftDomain);

#undef AXREL_DEFINE_ERROR

/// Offset into parsed text, 1-based line and column.
struct SourcePos {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
};

class SyntaxError : public Error {
public:
    SyntaxError(SourcePos pos, const std::string& msg)
        : Error(pos.str() + ": syntax error: " + msg), pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

class SortError : public Error {
public:
    SortError(SourcePos pos, std::string expected, std::string found, const std::string& what)
        : Error(pos.str() + ": sort error: " + what + " (expected " + expected + ", found " + found + ")"),
          pos_(pos), expected_(std::move(expected)), found_(std::move(found)) {}
    SourcePos pos() const { return pos_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    SourcePos pos_;
    std::string expected_;
    std::string found_;
};

}  // namespace axrel
