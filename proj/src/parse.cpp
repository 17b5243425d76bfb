#include "cubiccanon/parse.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace cubiccanon {

namespace {

constexpr int kMaxExponent = 64;

class Parser {
  public:
    explicit Parser(std::string_view text, std::size_t base_offset = 0)
        : text_(text), base_(base_offset) {}

    Poly2 parse_expression_to_end() {
        Poly2 result = parse_expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        return result;
    }

  private:
    std::string_view text_;
    std::size_t base_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, base_ + pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            const unsigned char c = text_[pos_];
            if (c >= 0x80) fail("non-ASCII input");
            if (c != ' ' && c != '\t') break;
            ++pos_;
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly2 parse_expression() {
        int sign = 1;
        if (eat('-'))
            sign = -1;
        else
            eat('+');
        Poly2 acc = scale(parse_term(), sign, 0.0);
        for (;;) {
            if (eat('+'))
                acc = add(acc, parse_term(), 0.0);
            else if (eat('-'))
                acc = sub(acc, parse_term(), 0.0);
            else
                break;
        }
        return acc;
    }

    Poly2 parse_term() {
        Poly2 acc = parse_factor();
        while (eat('*')) acc = mul(acc, parse_factor(), 0.0);
        return acc;
    }

    Poly2 parse_factor() {
        const char c = peek();
        if (c == '(') {
            eat('(');
            Poly2 inner = parse_expression();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'x' || c == 'y') return parse_variable();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        fail("expected number, variable, or '('");
    }

    Poly2 parse_variable() {
        skip_ws();
        const char v = text_[pos_++];
        int exponent = 1;
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            exponent = parse_uint();
        }
        return v == 'x' ? Poly2::monomial(exponent, 0) : Poly2::monomial(0, exponent);
    }

    int parse_uint() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected exponent");
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > kMaxExponent) fail("exponent exceeds 64");
            ++pos_;
        }
        return static_cast<int>(value);
    }

    Poly2 parse_number() {
        skip_ws();
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc{}) fail("malformed number");
        pos_ += static_cast<std::size_t>(res.ptr - begin);
        return Poly2::constant(value);
    }
};

}  // namespace

Poly2 parse_poly(std::string_view text) {
    return Parser(text).parse_expression_to_end().chopped(0.0);
}

SubstitutionMap parse_map(std::string_view text) {
    const std::size_t sep = text.find(';');
    if (sep == std::string_view::npos)
        throw ParseError("expected ';' separating map components", text.size());
    Poly2 p = Parser(text.substr(0, sep)).parse_expression_to_end().chopped(0.0);
    Poly2 q = Parser(text.substr(sep + 1), sep + 1).parse_expression_to_end().chopped(0.0);
    return {p, q};
}

}  // namespace cubiccanon
