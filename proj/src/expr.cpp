#include "topo/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace topo {

struct Expression::Node {
    enum class Op { Const, VarU, VarV, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Tan, Exp };
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double u, double v) const {
        switch (op) {
            case Op::Const: return value;
            case Op::VarU: return u;
            case Op::VarV: return v;
            case Op::Add: return lhs->eval(u, v) + rhs->eval(u, v);
            case Op::Sub: return lhs->eval(u, v) - rhs->eval(u, v);
            case Op::Mul: return lhs->eval(u, v) * rhs->eval(u, v);
            case Op::Div: return lhs->eval(u, v) / rhs->eval(u, v);
            case Op::Pow: return std::pow(lhs->eval(u, v), rhs->eval(u, v));
            case Op::Neg: return -lhs->eval(u, v);
            case Op::Sin: return std::sin(lhs->eval(u, v));
            case Op::Cos: return std::cos(lhs->eval(u, v));
            case Op::Tan: return std::tan(lhs->eval(u, v));
            case Op::Exp: return std::exp(lhs->eval(u, v));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->value = value;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, "trailing input in expression");
        return e;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(pos_, std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make(Op::Add, lhs, term());
            else if (accept('-'))
                lhs = make(Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make(Op::Mul, lhs, unary());
            else if (accept('/'))
                lhs = make(Op::Div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Op::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Op::Pow, base, unary());  // right-assoc
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of expression");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        const char* start = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(start, &end);
        if (end == start) throw ParseError(pos_, "invalid number");
        pos_ += static_cast<std::size_t>(end - start);
        return make(Op::Const, nullptr, nullptr, v);
    }

    NodePtr name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::string id = text_.substr(start, pos_ - start);
        if (id == "u") return make(Op::VarU);
        if (id == "v") return make(Op::VarV);
        if (id == "pi") return make(Op::Const, nullptr, nullptr, M_PI);
        Op op;
        if (id == "sin")
            op = Op::Sin;
        else if (id == "cos")
            op = Op::Cos;
        else if (id == "tan")
            op = Op::Tan;
        else if (id == "exp")
            op = Op::Exp;
        else
            throw ParseError(start, "unknown identifier '" + id + "'");
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make(op, arg);
    }
};

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.root_ = Parser(text).run();
    e.text_ = text;
    return e;
}

double Expression::eval(double u, double v) const { return root_->eval(u, v); }

std::function<double(double, double)> Expression::fn() const {
    auto root = root_;
    return [root](double u, double v) { return root->eval(u, v); };
}

}  // namespace topo
