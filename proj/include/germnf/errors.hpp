#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace germnf {

/// Input document failed to parse or validate.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One of the standing hypotheses on the input germ fails.
class hypothesis_error : public std::runtime_error {
public:
    enum class kind {
        not_tangent,     // linear part is not the identity, or the origin moves
        degenerate,      // the map equals the identity through the working degree
        fixed_line,      // f - id is not divisible by z1: {z1=0} is not fixed pointwise
        singular_origin, // the reduced map does not vanish at the origin
    };

    hypothesis_error(kind k, const std::string& what)
        : std::runtime_error(what), kind_(k) {}

    kind which() const noexcept { return kind_; }

private:
    kind kind_;
};

/// A scaling constraint needs a root that does not exist in the coefficient field.
class root_not_in_field : public std::runtime_error {
public:
    root_not_in_field(std::string equation, const std::string& what)
        : std::runtime_error(what), equation_(std::move(equation)) {}

    const std::string& equation() const noexcept { return equation_; }

private:
    std::string equation_;
};

/// Internal consistency failure (case tables, certificates). A bug signal, not a user error.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace germnf
