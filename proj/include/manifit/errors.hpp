#pragma once

#include <stdexcept>
#include <string>

namespace manifit {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DegenerateDirection : public Error {
public:
    explicit DegenerateDirection(const std::string& msg = "direction vector has zero norm")
        : Error(msg) {}
};

class InvalidMatrix : public Error {
public:
    explicit InvalidMatrix(const std::string& msg) : Error(msg) {}
};

class NotImplemented : public Error {
public:
    explicit NotImplemented(const std::string& msg) : Error(msg) {}
};

class AmbiguousProjection : public Error {
public:
    explicit AmbiguousProjection(const std::string& msg = "projection is not unique here")
        : Error(msg) {}
};

class RejectionBudgetExceeded : public Error {
public:
    explicit RejectionBudgetExceeded(const std::string& msg) : Error(msg) {}
};

class EmptyInput : public Error {
public:
    explicit EmptyInput(const std::string& msg = "input is empty") : Error(msg) {}
};

class EmptyNeighborhood : public Error {
public:
    explicit EmptyNeighborhood(const std::string& msg = "no neighbors with positive weight")
        : Error(msg) {}
};

class EmptyCylinder : public Error {
public:
    explicit EmptyCylinder(const std::string& msg = "no samples inside the cylinder")
        : Error(msg) {}
};

class InsufficientNeighbors : public Error {
public:
    explicit InsufficientNeighbors(const std::string& msg) : Error(msg) {}
};

class AllExcluded : public Error {
public:
    explicit AllExcluded(const std::string& msg = "every point is masked out") : Error(msg) {}
};

class NonPositiveInput : public Error {
public:
    explicit NonPositiveInput(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace manifit
