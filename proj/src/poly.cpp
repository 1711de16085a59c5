#include "bloch/poly.hpp"

#include <cctype>

namespace bloch {

namespace {

// Recursive-descent parser:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := ('-')? atom ('^' int)?
//   atom   := number ('/' number)? | identifier | '(' expr ')'
class Parser {
public:
    Parser(const RingPtr<Rationals>& ring, std::string_view text) : ring_(ring), text_(text) {}

    QPoly parse()
    {
        QPoly p = expr();
        skip();
        if (pos_ != text_.size()) fail("trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    QPoly expr()
    {
        QPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    QPoly term()
    {
        QPoly acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    QPoly factor()
    {
        if (accept('-')) return -factor();
        QPoly base = atom();
        if (!accept('^')) return base;
        bool negative = accept('-');
        if (!negative && accept('(')) {
            negative = accept('-');
            long e = integer();
            if (!accept(')')) fail("expected ')'");
            return raise(base, negative ? -e : e);
        }
        long e = integer();
        return raise(base, negative ? -e : e);
    }

    QPoly raise(const QPoly& base, long e)
    {
        if (e >= 0) return base.pow(static_cast<unsigned>(e));
        // Only monomials can carry negative powers.
        if (base.size() != 1) fail("negative power of a non-monomial");
        const auto& [exp, c] = *base.terms().begin();
        Exponent inv(exp.size());
        for (std::size_t i = 0; i < exp.size(); ++i) inv[i] = static_cast<int>(exp[i] * e);
        return QPoly::monomial(ring_, inv, 1) *
               QPoly::constant(ring_, Rationals::inv(c)).pow(static_cast<unsigned>(-e));
    }

    long integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    QPoly atom()
    {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            QPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            mpq_class value(std::string(text_.substr(start, pos_ - start)));
            if (accept('/')) {
                skip();
                std::size_t s2 = pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                if (s2 == pos_) fail("expected denominator");
                value /= mpq_class(std::string(text_.substr(s2, pos_ - s2)));
            }
            return QPoly::constant(ring_, value);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (!ring_->index_of(name)) fail("unknown variable " + name);
            return QPoly::variable(ring_, name);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    RingPtr<Rationals> ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_poly(const RingPtr<Rationals>& ring, std::string_view text)
{
    return Parser(ring, text).parse();
}

}  // namespace bloch
