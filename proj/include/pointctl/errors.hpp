#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pointctl {

/// Parameter outside the admissible range (negative order, mu above the
/// Hardy constant, b outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Index outside [first, last] of a finite family.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// No sign change of J_nu inside the a-priori bracket. This can only mean an
/// evaluation bug, callers must not recover from it.
class BracketError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    [[nodiscard]] double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// The actuator location sits (numerically) on a node of some eigenfunction.
class MembershipError : public std::runtime_error {
public:
    MembershipError(const std::string& what, int mode)
        : std::runtime_error(what), mode_(mode) {}
    [[nodiscard]] int mode() const noexcept { return mode_; }

private:
    int mode_;
};

class ConditioningError : public std::runtime_error {
public:
    ConditioningError(const std::string& what, double condition, double defect)
        : std::runtime_error(what), condition_(condition), defect_(defect) {}
    [[nodiscard]] double condition_number() const noexcept { return condition_; }
    [[nodiscard]] double defect() const noexcept { return defect_; }

private:
    double condition_;
    double defect_;
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}
    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace pointctl
