#include "surfcheck/mpoly.hpp"

#include <cctype>

namespace surfcheck {

namespace {

// Recursive-descent parser for the canonical grammar:
//   poly   := sign? term (('+'|'-') term)*
//   term   := coef ('*' factor)* | factor ('*' factor)*
//   factor := var ('^' uint)?
//   coef   := int ('/' uint)?
// Whitespace is ignored everywhere.
class Parser {
public:
    Parser(std::string_view text, const VarCtxPtr& ctx) : text_(text), ctx_(ctx) {}

    MPoly parse() {
        MPoly result = MPoly::zero(ctx_);
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        result += parse_term(neg);
        skip_ws();
        while (pos_ < text_.size()) {
            char op = get();
            if (op != '+' && op != '-') throw ParseError("syntax error: expected '+' or '-'", pos_ - 1);
            result += parse_term(op == '-');
            skip_ws();
        }
        return result;
    }

private:
    std::string_view text_;
    const VarCtxPtr& ctx_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    char get() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("syntax error: unexpected end of input", pos_);
        return text_[pos_++];
    }

    MPoly parse_term(bool negate) {
        char c = peek();
        Rat coef(1);
        Mono mono(ctx_->arity(), 0);
        bool saw_anything = false;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            coef = parse_coef();
            saw_anything = true;
        } else if (is_name_start(c)) {
            parse_factor(mono);
            saw_anything = true;
        } else {
            throw ParseError("syntax error: expected coefficient or variable", pos_);
        }
        while (peek() == '*') {
            get();
            if (!is_name_start(peek()))
                throw ParseError("syntax error: expected variable after '*'", pos_);
            parse_factor(mono);
        }
        (void)saw_anything;
        if (negate) coef = -coef;
        return MPoly::monomial(ctx_, std::move(mono), std::move(coef));
    }

    static bool is_name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Rat parse_coef() {
        BigInt num = parse_uint("integer");
        if (peek() == '/') {
            get();
            size_t dpos = pos_;
            BigInt den = parse_uint("denominator");
            if (den.is_zero()) throw ParseError("zero denominator", dpos);
            return Rat(std::move(num), std::move(den));
        }
        return Rat(std::move(num));
    }

    BigInt parse_uint(const char* what) {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(std::string("syntax error: expected ") + what, pos_);
        return BigInt::from_string(text_.substr(start, pos_ - start));
    }

    void parse_factor(Mono& mono) {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        long v = ctx_->index_of(name);
        if (v < 0) throw ParseError("unknown variable '" + name + "'", start);
        uint32_t exp = 1;
        if (peek() == '^') {
            get();
            if (peek() == '-') throw ParseError("negative exponent", pos_);
            BigInt e = parse_uint("exponent");
            if (!e.fits_int64() || e.to_int64() > 0xffffff)
                throw ParseError("exponent too large", pos_);
            exp = static_cast<uint32_t>(e.to_int64());
        }
        mono[static_cast<size_t>(v)] += exp;
    }
};

}  // namespace

MPoly poly_parse(std::string_view text, const VarCtxPtr& ctx) {
    return Parser(text, ctx).parse();
}

}  // namespace surfcheck
