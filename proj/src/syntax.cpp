#include "lcs/syntax.hpp"

#include <cctype>
#include <memory>

namespace lcs {

namespace {

struct Node {
    enum Kind { Num, Pi, Imag, Name, Call, Neg, Add, Sub, Mul, Div, Pow } kind;
    Rational num;
    std::string name;
    std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k)
{
    auto n = std::make_unique<Node>();
    n->kind = k;
    return n;
}

NodePtr binary(Node::Kind k, NodePtr a, NodePtr b)
{
    auto n = make(k);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse()
    {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return n;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw MathError("parse error at column " + std::to_string(pos_ + 1) + ": " + what + " in '" + s_ + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(const char* tok)
    {
        skip();
        return s_.compare(pos_, std::char_traits<char>::length(tok), tok) == 0;
    }

    bool accept(const char* tok)
    {
        if (!peek(tok))
            return false;
        pos_ += std::char_traits<char>::length(tok);
        return true;
    }

    NodePtr expr()
    {
        NodePtr n = term();
        for (;;) {
            if (accept("+"))
                n = binary(Node::Add, std::move(n), term());
            else if (accept("-"))
                n = binary(Node::Sub, std::move(n), term());
            else
                return n;
        }
    }

    NodePtr term()
    {
        NodePtr n = unary();
        for (;;) {
            if (peek("**"))
                fail("misplaced power");
            if (accept("*") || accept("^"))
                n = binary(Node::Mul, std::move(n), unary());
            else if (accept("/"))
                n = binary(Node::Div, std::move(n), unary());
            else
                return n;
        }
    }

    NodePtr unary()
    {
        if (accept("-")) {
            auto n = make(Node::Neg);
            n->a = unary();
            return n;
        }
        if (accept("+"))
            return unary();
        return power();
    }

    NodePtr power()
    {
        NodePtr base = atom();
        if (accept("**")) {
            bool neg = accept("-");
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("integer exponent expected");
            auto e = make(Node::Num);
            e->num = Rational(s_.substr(start, pos_ - start));
            if (neg)
                e->num = -e->num;
            return binary(Node::Pow, std::move(base), std::move(e));
        }
        return base;
    }

    NodePtr atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = expr();
            if (!accept(")"))
                fail("')' expected");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            auto n = make(Node::Num);
            n->num = Rational(s_.substr(start, pos_ - start));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "pi")
                return make(Node::Pi);
            if (id == "I")
                return make(Node::Imag);
            if (id == "sin" || id == "cos") {
                if (!accept("("))
                    fail("'(' expected after " + id);
                auto n = make(Node::Call);
                n->name = id;
                n->a = expr();
                if (!accept(")"))
                    fail("')' expected");
                return n;
            }
            auto n = make(Node::Name);
            n->name = id;
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

class Evaluator {
public:
    explicit Evaluator(RosterPtr r) : r_(std::move(r)) {}

    DifferentialForm form(const Node& n)
    {
        switch (n.kind) {
        case Node::Num:
        case Node::Pi:
        case Node::Imag:
            return DifferentialForm::scalar(r_, constant(n));
        case Node::Name:
            return name(n.name);
        case Node::Call:
            return DifferentialForm::scalar(trig(n));
        case Node::Neg:
            return -form(*n.a);
        case Node::Add:
            return add(form(*n.a), form(*n.b));
        case Node::Sub:
            return add(form(*n.a), -form(*n.b));
        case Node::Mul:
            return wedge(form(*n.a), form(*n.b));
        case Node::Div:
            return form(*n.a).scaled(constant(*n.b).inverse());
        case Node::Pow: {
            long e = n.b->num.get_num().get_si();
            if (is_constant_expr(*n.a))
                return DifferentialForm::scalar(r_, constant(n));
            if (e < 0)
                throw MathError("negative power of a non-constant expression");
            DifferentialForm base = form(*n.a);
            DifferentialForm out = DifferentialForm::scalar(r_, Coef(1));
            for (long i = 0; i < e; ++i)
                out = wedge(out, base);
            return out;
        }
        }
        throw MathError("bad expression node");
    }

    static bool is_constant_expr(const Node& n)
    {
        switch (n.kind) {
        case Node::Num:
        case Node::Pi:
        case Node::Imag:
            return true;
        case Node::Name:
        case Node::Call:
            return false;
        case Node::Neg:
        case Node::Pow:
            return is_constant_expr(*n.a);
        default:
            return is_constant_expr(*n.a) && is_constant_expr(*n.b);
        }
    }

    static Coef constant(const Node& n)
    {
        switch (n.kind) {
        case Node::Num:
            return Coef(n.num);
        case Node::Pi:
            return Coef::pi();
        case Node::Imag:
            return Coef::i();
        case Node::Neg:
            return -constant(*n.a);
        case Node::Add:
            return constant(*n.a) + constant(*n.b);
        case Node::Sub:
            return constant(*n.a) - constant(*n.b);
        case Node::Mul:
            return constant(*n.a) * constant(*n.b);
        case Node::Div:
            return constant(*n.a) / constant(*n.b);
        case Node::Pow: {
            Coef base = constant(*n.a);
            long e = n.b->num.get_num().get_si();
            Coef out(1);
            for (long i = 0; i < std::labs(e); ++i)
                out *= base;
            return e < 0 ? out.inverse() : out;
        }
        default:
            throw MathError("expected a constant expression, found '" + n.name + "'");
        }
    }

private:
    RosterPtr r_;

    static DifferentialForm add(DifferentialForm a, const DifferentialForm& b)
    {
        if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree())
            throw MathError("sum of forms of different degree");
        return a += b;
    }

    DifferentialForm name(const std::string& id)
    {
        int idx = r_->index(id);
        if (idx >= 0) {
            if (r_->kind(idx) != CoordKind::Fiber)
                throw MathError("torus coordinate '" + id + "' may only appear inside sin/cos");
            return DifferentialForm::scalar(FourierScalar::fiber_var(r_, idx - r_->n_torus()));
        }
        if (id.size() > 1 && id[0] == 'd') {
            int c = r_->index(id.substr(1));
            if (c >= 0)
                return DifferentialForm::covector(r_, c);
        }
        throw MathError("unknown identifier '" + id + "'");
    }

    /* argument as constant + sum of coefficients times torus coordinates */
    void linear(const Node& n, std::vector<Coef>& coeffs, Coef& cst, const Coef& scale)
    {
        if (is_constant_expr(n)) {
            cst += scale * constant(n);
            return;
        }
        switch (n.kind) {
        case Node::Name: {
            int idx = r_->index(n.name);
            if (idx < 0 || r_->kind(idx) == CoordKind::Fiber)
                throw MathError("trigonometric argument must be linear in torus coordinates");
            coeffs[idx] += scale;
            return;
        }
        case Node::Neg:
            linear(*n.a, coeffs, cst, -scale);
            return;
        case Node::Add:
            linear(*n.a, coeffs, cst, scale);
            linear(*n.b, coeffs, cst, scale);
            return;
        case Node::Sub:
            linear(*n.a, coeffs, cst, scale);
            linear(*n.b, coeffs, cst, -scale);
            return;
        case Node::Mul:
            if (is_constant_expr(*n.a))
                linear(*n.b, coeffs, cst, scale * constant(*n.a));
            else if (is_constant_expr(*n.b))
                linear(*n.a, coeffs, cst, scale * constant(*n.b));
            else
                throw MathError("trigonometric argument must be linear in torus coordinates");
            return;
        case Node::Div:
            if (!is_constant_expr(*n.b))
                throw MathError("division by a non-constant");
            linear(*n.a, coeffs, cst, scale / constant(*n.b));
            return;
        default:
            throw MathError("unsupported trigonometric argument");
        }
    }

    FourierScalar trig(const Node& n)
    {
        std::vector<Coef> coeffs(r_->size());
        Coef cst;
        linear(*n.a, coeffs, cst, Coef(1));
        if (!cst.is_zero())
            throw MathError("trigonometric argument must have no constant phase");
        std::vector<int> freq(r_->n_torus());
        const Coef two_pi = Coef::pi() * Coef(2);
        for (int i = 0; i < r_->n_torus(); ++i) {
            Coef k = coeffs[i] / two_pi;
            if (!k.is_constant() || !k.constant().is_real() || k.constant().re.get_den() != 1)
                throw MathError("trigonometric argument must be 2*pi times an integer combination");
            freq[i] = static_cast<int>(k.constant().re.get_num().get_si());
        }
        return n.name == "sin" ? FourierScalar::sin_mode(r_, freq) : FourierScalar::cos_mode(r_, freq);
    }
};

}  // namespace

DifferentialForm parse_form(const std::string& text, const RosterPtr& roster)
{
    NodePtr n = Parser(text).parse();
    return Evaluator(roster).form(*n);
}

FourierScalar parse_scalar(const std::string& text, const RosterPtr& roster)
{
    DifferentialForm f = parse_form(text, roster);
    if (!f.is_zero() && f.degree() != 0)
        throw MathError("expected a scalar expression: " + text);
    return f.coefficient(0).roster() ? f.coefficient(0) : FourierScalar(roster);
}

Coef parse_constant(const std::string& text)
{
    NodePtr n = Parser(text).parse();
    return Evaluator::constant(*n);
}

}  // namespace lcs
