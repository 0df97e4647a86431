#ifndef CESARO_EXPR_HPP
#define CESARO_EXPR_HPP

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cesaro/errors.hpp"

namespace cesaro::expr {

// Grammar (standard precedence, ^ right-associative, unary minus between
// mul and pow):
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
//
// "x" is the variable, "pi" the constant; any other bare identifier is a
// parameter to be bound at evaluation time. Recognized functions:
// arctan, log (natural), exp, sin, cos, sqrt, abs.

enum class node_kind {
    number,
    variable,
    constant_pi,
    parameter,
    unary_fn,
    binary_op,
    negate,
};

struct node;
using node_ptr = std::shared_ptr<const node>;

struct node {
    node_kind kind;
    double number = 0.0;     // number
    std::string name;        // parameter / unary_fn
    char op = 0;             // binary_op: one of + - * / ^
    node_ptr lhs, rhs;       // children (unary/negate use lhs only)
};

using params = std::map<std::string, double, std::less<>>;

// Immutable expression tree.
class ast {
public:
    ast() = default;
    explicit ast(node_ptr root) : root_(std::move(root)) {}

    const node& root() const { return *root_; }
    node_ptr root_ptr() const { return root_; }
    bool empty() const { return !root_; }

    friend bool operator==(const ast& a, const ast& b) {
        return equal(a.root_.get(), b.root_.get());
    }

    // Names of unbound parameters appearing in the tree.
    std::set<std::string> parameters() const {
        std::set<std::string> out;
        collect(root_.get(), out);
        return out;
    }

private:
    static bool equal(const node* a, const node* b) {
        if (a == b)
            return true;
        if (!a || !b || a->kind != b->kind)
            return false;
        switch (a->kind) {
        case node_kind::number:
            // bit comparison; canonical printing round-trips exactly
            return a->number == b->number;
        case node_kind::variable:
        case node_kind::constant_pi:
            return true;
        case node_kind::parameter:
            return a->name == b->name;
        case node_kind::unary_fn:
            return a->name == b->name && equal(a->lhs.get(), b->lhs.get());
        case node_kind::binary_op:
            return a->op == b->op && equal(a->lhs.get(), b->lhs.get()) &&
                   equal(a->rhs.get(), b->rhs.get());
        case node_kind::negate:
            return equal(a->lhs.get(), b->lhs.get());
        }
        return false;
    }

    static void collect(const node* n, std::set<std::string>& out) {
        if (!n)
            return;
        if (n->kind == node_kind::parameter)
            out.insert(n->name);
        collect(n->lhs.get(), out);
        collect(n->rhs.get(), out);
    }

    node_ptr root_;
};

// --- factories (handy for building trees in tests) ---------------------

inline ast number(double v) {
    return ast(std::make_shared<node>(node{node_kind::number, v}));
}
inline ast variable() {
    return ast(std::make_shared<node>(node{node_kind::variable}));
}
inline ast constant_pi() {
    return ast(std::make_shared<node>(node{node_kind::constant_pi}));
}
inline ast parameter(std::string name) {
    node n{node_kind::parameter};
    n.name = std::move(name);
    return ast(std::make_shared<node>(std::move(n)));
}
inline ast unary(std::string fn, const ast& child) {
    node n{node_kind::unary_fn};
    n.name = std::move(fn);
    n.lhs = child.root_ptr();
    return ast(std::make_shared<node>(std::move(n)));
}
inline ast binary(char op, const ast& l, const ast& r) {
    node n{node_kind::binary_op};
    n.op = op;
    n.lhs = l.root_ptr();
    n.rhs = r.root_ptr();
    return ast(std::make_shared<node>(std::move(n)));
}
inline ast negate(const ast& child) {
    node n{node_kind::negate};
    n.lhs = child.root_ptr();
    return ast(std::make_shared<node>(std::move(n)));
}

// --- parsing ------------------------------------------------------------

namespace detail {

inline const std::set<std::string, std::less<>> known_fns = {
    "arctan", "log", "exp", "sin", "cos", "sqrt", "abs"};

class parser {
public:
    explicit parser(std::string_view src) : src_(src) {}

    ast run() {
        skip_ws();
        if (pos_ >= src_.size())
            throw parse_error("empty expression", 0);
        node_ptr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size())
            throw parse_error("unexpected trailing input", pos_);
        return ast(std::move(e));
    }

private:
    node_ptr parse_expr() {
        node_ptr left = parse_term();
        for (;;) {
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                const char op = take();
                node_ptr right = parse_term();
                left = make_binary(op, std::move(left), std::move(right));
            } else {
                return left;
            }
        }
    }

    node_ptr parse_term() {
        node_ptr left = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() == '*' || peek() == '/') {
                const char op = take();
                node_ptr right = parse_factor();
                left = make_binary(op, std::move(left), std::move(right));
            } else {
                return left;
            }
        }
    }

    node_ptr parse_factor() {
        skip_ws();
        if (peek() == '-') {
            take();
            node n{node_kind::negate};
            n.lhs = parse_factor();
            return std::make_shared<node>(std::move(n));
        }
        return parse_power();
    }

    node_ptr parse_power() {
        node_ptr base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            take();
            node_ptr exp = parse_factor(); // right-associative
            return make_binary('^', std::move(base), std::move(exp));
        }
        return base;
    }

    node_ptr parse_atom() {
        skip_ws();
        const std::size_t start = pos_;
        const char c = peek();
        if (c == '(') {
            take();
            node_ptr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = parse_ident();
            skip_ws();
            if (peek() == '(') {
                if (!known_fns.contains(name))
                    throw parse_error("unknown function '" + name + "'", start);
                take();
                node n{node_kind::unary_fn};
                n.name = std::move(name);
                n.lhs = parse_expr();
                skip_ws();
                if (peek() == ',')
                    throw parse_error("'" + n.name + "' takes one argument", pos_);
                expect(')');
                return std::make_shared<node>(std::move(n));
            }
            if (known_fns.contains(name))
                throw parse_error("function '" + name + "' needs an argument list", start);
            if (name == "x")
                return std::make_shared<node>(node{node_kind::variable});
            if (name == "pi")
                return std::make_shared<node>(node{node_kind::constant_pi});
            node n{node_kind::parameter};
            n.name = std::move(name);
            return std::make_shared<node>(std::move(n));
        }
        if (pos_ >= src_.size())
            throw parse_error("unexpected end of input", pos_);
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    node_ptr parse_number() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            take();
        if (peek() == '.') {
            take();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw parse_error("digit expected after decimal point", pos_);
            while (std::isdigit(static_cast<unsigned char>(peek())))
                take();
        }
        if (peek() == 'e' || peek() == 'E') {
            take();
            if (peek() == '+' || peek() == '-')
                take();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw parse_error("digit expected in exponent", pos_);
            while (std::isdigit(static_cast<unsigned char>(peek())))
                take();
        }
        double v = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last)
            throw parse_error("malformed number literal", start);
        node n{node_kind::number, v};
        return std::make_shared<node>(std::move(n));
    }

    std::string parse_ident() {
        const std::size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            take();
        return std::string(src_.substr(start, pos_ - start));
    }

    static node_ptr make_binary(char op, node_ptr l, node_ptr r) {
        node n{node_kind::binary_op};
        n.op = op;
        n.lhs = std::move(l);
        n.rhs = std::move(r);
        return std::make_shared<node>(std::move(n));
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            throw parse_error(std::string("expected '") + c + "'", pos_);
        take();
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char take() { return src_[pos_++]; }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ast parse(std::string_view source) { return detail::parser(source).run(); }

// --- canonical printing -------------------------------------------------
//
// print() emits the unique minimally parenthesized form; parse(print(e))
// is structurally identical to e.

namespace detail {

// precedence levels: 1 add, 2 mul, 3 unary minus, 4 pow, 5 atom
inline int prec(const node& n) {
    switch (n.kind) {
    case node_kind::binary_op:
        if (n.op == '+' || n.op == '-')
            return 1;
        if (n.op == '*' || n.op == '/')
            return 2;
        return 4; // ^
    case node_kind::negate:
        return 3;
    default:
        return 5;
    }
}

inline void print_node(const node& n, int min_prec, std::string& out) {
    const int p = prec(n);
    const bool parens = p < min_prec;
    if (parens)
        out += '(';
    switch (n.kind) {
    case node_kind::number: {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.number);
        out.append(buf, ptr);
        break;
    }
    case node_kind::variable:
        out += 'x';
        break;
    case node_kind::constant_pi:
        out += "pi";
        break;
    case node_kind::parameter:
        out += n.name;
        break;
    case node_kind::unary_fn:
        out += n.name;
        out += '(';
        print_node(*n.lhs, 0, out);
        out += ')';
        break;
    case node_kind::negate:
        out += '-';
        print_node(*n.lhs, 3, out);
        break;
    case node_kind::binary_op:
        // left-associative chains for + - * /; ^ pairs atom with factor
        if (n.op == '^') {
            print_node(*n.lhs, 5, out);
            out += '^';
            print_node(*n.rhs, 3, out);
        } else {
            print_node(*n.lhs, p, out);
            out += n.op;
            print_node(*n.rhs, p + 1, out);
        }
        break;
    }
    if (parens)
        out += ')';
}

} // namespace detail

inline std::string print(const ast& e) {
    std::string out;
    detail::print_node(e.root(), 0, out);
    return out;
}

// --- evaluation ---------------------------------------------------------

namespace detail {

inline double eval_node(const node& n, double x, const params& p) {
    switch (n.kind) {
    case node_kind::number:
        return n.number;
    case node_kind::variable:
        return x;
    case node_kind::constant_pi:
        return M_PI;
    case node_kind::parameter: {
        auto it = p.find(n.name);
        if (it == p.end())
            throw eval_error("unbound parameter '" + n.name + "'", x);
        return it->second;
    }
    case node_kind::negate:
        return -eval_node(*n.lhs, x, p);
    case node_kind::unary_fn: {
        const double a = eval_node(*n.lhs, x, p);
        double r;
        if (n.name == "arctan")
            r = std::atan(a);
        else if (n.name == "log") {
            if (a <= 0.0)
                throw eval_error("log of non-positive value", x);
            r = std::log(a);
        } else if (n.name == "exp")
            r = std::exp(a);
        else if (n.name == "sin")
            r = std::sin(a);
        else if (n.name == "cos")
            r = std::cos(a);
        else if (n.name == "sqrt") {
            if (a < 0.0)
                throw eval_error("sqrt of negative value", x);
            r = std::sqrt(a);
        } else if (n.name == "abs")
            r = std::fabs(a);
        else
            throw eval_error("unknown function '" + n.name + "'", x);
        if (!std::isfinite(r))
            throw eval_error("non-finite result of " + n.name, x);
        return r;
    }
    case node_kind::binary_op: {
        const double a = eval_node(*n.lhs, x, p);
        const double b = eval_node(*n.rhs, x, p);
        double r;
        switch (n.op) {
        case '+': r = a + b; break;
        case '-': r = a - b; break;
        case '*': r = a * b; break;
        case '/':
            if (b == 0.0)
                throw eval_error("division by zero", x);
            r = a / b;
            break;
        case '^': r = std::pow(a, b); break;
        default:
            throw eval_error("bad operator", x);
        }
        if (!std::isfinite(r))
            throw eval_error(std::string("non-finite result of '") + n.op + "'", x);
        return r;
    }
    }
    throw eval_error("corrupt expression node", x);
}

} // namespace detail

inline double evaluate(const ast& e, double x, const params& p = {}) {
    return detail::eval_node(e.root(), x, p);
}

} // namespace cesaro::expr

#endif // CESARO_EXPR_HPP
