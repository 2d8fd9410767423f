#pragma once

#include <functional>
#include <memory>
#include <string>

#include "topo/word.hpp"  // ParseError

namespace topo {

// Arithmetic expressions in variables u, v with + - * / ^, sin cos tan exp,
// numeric literals and parentheses.
class Expression {
public:
    static Expression parse(const std::string& text);

    double eval(double u, double v) const;
    const std::string& text() const { return text_; }

    // Callable view, re-entrant.
    std::function<double(double, double)> fn() const;

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace topo
