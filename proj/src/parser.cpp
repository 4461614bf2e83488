#include "dcrec/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <vector>

namespace dcrec {

namespace {

enum class Tok { Number, Ident, Punct, End };

struct Token {
    Tok kind;
    std::string_view text;
    SourceSpan span;
};

bool is_ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool is_ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }
bool is_digit(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto emit = [&](Tok kind, std::size_t start) {
        out.push_back({kind, text.substr(start, i - start), {start, i}});
    };
    while (i < text.size()) {
        const char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (is_digit(ch) || (ch == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
            const std::size_t start = i;
            while (i < text.size() && is_digit(text[i])) ++i;
            if (i < text.size() && text[i] == '.') {
                ++i;
                while (i < text.size() && is_digit(text[i])) ++i;
            }
            if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
                if (j < text.size() && is_digit(text[j])) {
                    i = j;
                    while (i < text.size() && is_digit(text[i])) ++i;
                }
            }
            emit(Tok::Number, start);
        } else if (is_ident_start(ch)) {
            const std::size_t start = i;
            while (i < text.size() && is_ident_char(text[i])) ++i;
            emit(Tok::Ident, start);
        } else {
            const std::size_t start = i;
            // Multi-byte UTF-8 sequences become a single (unexpected) token.
            ++i;
            while (i < text.size() && (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) ++i;
            emit(Tok::Punct, start);
        }
    }
    out.push_back({Tok::End, text.substr(text.size()), {text.size(), text.size()}});
    return out;
}

SourceSpan join(SourceSpan a, SourceSpan b) { return {a.start, b.end}; }

struct ParsedNumber {
    Number value;
    SourceSpan span;
};

struct TermSpans {
    SourceSpan a, b;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text), tokens_(lex(text)) {}

    RecurrenceSpec run() {
        const SourceSpan eq_start = peek().span;
        expect_ident("T");
        expect_punct('(');
        expect_ident("n");
        expect_punct(')');
        expect_punct('=');
        addend();
        while (is_punct('+')) {
            advance();
            addend();
        }
        equation_span_ = join(eq_start, previous().span);
        while (is_punct(';')) {
            advance();
            directive();
        }
        if (peek().kind != Tok::End) unexpected("expected ';' or end of input");
        if (!have_driving_)
            throw ParseError(ParseErrorKind::MissingDrivingTerm, equation_span_,
                             "the equation needs a non-recursive driving term such as 'n' or '1'");
        return finish();
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }
    bool is_punct(char ch, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Punct && t.text.size() == 1 && t.text[0] == ch;
    }
    bool is_ident(std::string_view name, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Ident && t.text == name;
    }

    [[noreturn]] void unexpected(const std::string& what) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + std::string(t.text) + "'";
        throw ParseError(ParseErrorKind::UnexpectedToken, t.span, what + ", found " + found);
    }
    void expect_punct(char ch) {
        if (!is_punct(ch)) unexpected(std::string("expected '") + ch + "'");
        advance();
    }
    SourceSpan expect_ident(std::string_view name) {
        if (!is_ident(name)) unexpected("expected '" + std::string(name) + "'");
        return advance().span;
    }

    ParsedNumber number() {
        const SourceSpan start = peek().span;
        bool negative = false;
        if (is_punct('-')) {
            negative = true;
            advance();
        }
        if (peek().kind != Tok::Number) unexpected("expected a number");
        const Token& head = advance();
        std::string literal = (negative ? "-" : "") + std::string(head.text);
        const bool integral = head.text.find_first_of(".eE") == std::string_view::npos;
        if (integral && is_punct('/')) {
            advance();
            if (peek().kind != Tok::Number) unexpected("expected an integer denominator");
            literal += "/" + std::string(advance().text);
        }
        const SourceSpan span = join(start, previous().span);
        auto value = Number::parse(literal);
        if (!value)
            throw ParseError(ParseErrorKind::BadNumber, span, "malformed or out-of-range number '" + literal + "'");
        return {*value, span};
    }

    void addend() {
        if (peek().kind == Tok::Number || is_punct('-')) {
            ParsedNumber coeff = number();
            if (is_punct('*')) {
                advance();
                if (is_ident("T")) {
                    recterm(coeff);
                } else {
                    npart(coeff);
                }
            } else {
                set_driving(coeff, std::nullopt, std::nullopt, coeff.span);
            }
        } else if (is_ident("T")) {
            recterm({Number(1.0), peek().span});
        } else if (is_ident("n") || is_ident("log")) {
            npart({Number(1.0), peek().span});
        } else {
            unexpected("expected a term");
        }
    }

    void recterm(ParsedNumber a) {
        expect_ident("T");
        expect_punct('(');
        expect_ident("ceil");
        expect_punct('(');
        ParsedNumber b = number();
        expect_punct('*');
        expect_ident("n");
        expect_punct(')');
        expect_punct(')');
        raw_.terms.push_back({a.value, b.value});
        term_spans_.push_back({a.span, b.span});
    }

    void npart(ParsedNumber c) {
        const SourceSpan start = peek().span;
        std::optional<ParsedNumber> alpha, beta;
        if (is_ident("n")) {
            const SourceSpan n_span = advance().span;
            alpha = ParsedNumber{Number(1.0), n_span};
            if (is_punct('^')) {
                advance();
                alpha = number();
            }
            if (is_punct('*')) {
                if (!is_ident("log", 1)) {
                    advance();
                    unexpected("expected 'log' after 'n*'");
                }
                advance();
                beta = log_part();
            }
        } else {
            beta = log_part();
        }
        set_driving(c, alpha, beta, join(start, previous().span));
    }

    ParsedNumber log_part() {
        const SourceSpan start = expect_ident("log");
        expect_punct('(');
        expect_ident("n");
        expect_punct(')');
        ParsedNumber beta{Number(1.0), join(start, previous().span)};
        if (is_punct('^')) {
            advance();
            beta = number();
        }
        return beta;
    }

    void set_driving(const ParsedNumber& c, const std::optional<ParsedNumber>& alpha,
                     const std::optional<ParsedNumber>& beta, SourceSpan whole) {
        if (have_driving_)
            throw ParseError(ParseErrorKind::UnexpectedToken, join(c.span, whole),
                             "only one driving term is allowed");
        have_driving_ = true;
        raw_.driving.c = c.value;
        raw_.driving.alpha = alpha ? alpha->value : Number(0.0);
        raw_.driving.beta = beta ? beta->value : Number(0.0);
        c_span_ = c.span;
        alpha_span_ = alpha ? alpha->span : whole;
        beta_span_ = beta ? beta->span : whole;
    }

    void directive() {
        if (is_ident("n0")) {
            const SourceSpan name = advance().span;
            if (n0_seen_) throw ParseError(ParseErrorKind::DuplicateDirective, name, "n0 given twice");
            n0_seen_ = true;
            expect_punct('=');
            if (is_ident("auto")) {
                n0_span_ = advance().span;
                raw_.n0.reset();
                return;
            }
            const SourceSpan start = peek().span;
            bool negative = false;
            if (is_punct('-')) {
                negative = true;
                advance();
            }
            if (peek().kind != Tok::Number) unexpected("expected 'auto' or an integer");
            const Token& t = advance();
            n0_span_ = join(start, t.span);
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
                throw ParseError(ParseErrorKind::BadNumber, *n0_span_, "n0 must be an integer");
            raw_.n0 = negative ? -v : v;
        } else if (is_ident("d")) {
            const SourceSpan name = advance().span;
            if (d_seen_) throw ParseError(ParseErrorKind::DuplicateDirective, name, "d given twice");
            d_seen_ = true;
            expect_punct('=');
            ParsedNumber d = number();
            raw_.d = d.value;
            d_span_ = d.span;
        } else {
            unexpected("expected directive 'n0' or 'd'");
        }
    }

    SourceSpan span_for(const ValidationIssue& issue) const {
        switch (issue.field) {
            case SpecField::C: return c_span_;
            case SpecField::Alpha: return alpha_span_;
            case SpecField::Beta: return beta_span_;
            case SpecField::D: return d_span_.value_or(equation_span_);
            case SpecField::N0: return n0_span_.value_or(equation_span_);
            case SpecField::TermA: return term_spans_.at(issue.term_index).a;
            case SpecField::TermB: return term_spans_.at(issue.term_index).b;
            case SpecField::Terms: return equation_span_;
        }
        return equation_span_;
    }

    RecurrenceSpec finish() {
        ValidationResult result = validate(raw_);
        if (result.ok()) return std::move(*result.spec);
        const ValidationIssue& first = result.issues.front();
        std::string message;
        for (const ValidationIssue& i : result.issues) {
            if (!message.empty()) message += "; ";
            message += std::string(to_string(i.code)) + ": " + i.message;
        }
        throw ParseError(ParseErrorKind::Invalid, span_for(first), message, first.code);
    }

    std::string_view text_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    RawSpec raw_;
    bool have_driving_ = false;
    bool n0_seen_ = false;
    bool d_seen_ = false;
    SourceSpan equation_span_{};
    SourceSpan c_span_{}, alpha_span_{}, beta_span_{};
    std::optional<SourceSpan> n0_span_, d_span_;
    std::vector<TermSpans> term_spans_;
};

}  // namespace

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::UnexpectedToken: return "UnexpectedToken";
        case ParseErrorKind::MissingDrivingTerm: return "MissingDrivingTerm";
        case ParseErrorKind::DuplicateDirective: return "DuplicateDirective";
        case ParseErrorKind::BadNumber: return "BadNumber";
        case ParseErrorKind::Invalid: return "Invalid";
    }
    return "?";
}

ParseError::ParseError(ParseErrorKind kind, SourceSpan span, std::string message,
                       std::optional<ValidationCode> validation)
    : Error(kind == ParseErrorKind::Invalid ? ErrorCode::Validation : ErrorCode::Precondition,
            std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      span_(span),
      detail_(std::move(message)),
      validation_(validation) {}

std::string ParseError::render(std::string_view text) const {
    std::size_t line_start = 0, line = 1;
    for (std::size_t i = 0; i < span_.start && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            line_start = i + 1;
        }
    }
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::size_t col = span_.start - line_start;
    const std::size_t width =
        std::max<std::size_t>(1, std::min(span_.end, line_end) - std::min(span_.start, line_end));
    std::string out = std::to_string(line) + ":" + std::to_string(col + 1) + ": " + what() + "\n";
    out += "  " + std::string(text.substr(line_start, line_end - line_start)) + "\n";
    out += "  " + std::string(col, ' ') + std::string(width, '^') + "\n";
    return out;
}

RecurrenceSpec parse(std::string_view text) {
    return Parser(text).run();
}

std::string canonical(const RecurrenceSpec& spec) {
    std::string out = "T(n) = ";
    for (const RecTerm& t : spec.terms())
        out += t.a.to_string() + "*T(ceil(" + t.b.to_string() + "*n)) + ";
    const DrivingTerm& drv = spec.driving();
    out += drv.c.to_string();
    if (drv.alpha.value() != 0.0) out += "*n^" + drv.alpha.to_string();
    if (drv.beta.value() != 0.0) out += "*log(n)^" + drv.beta.to_string();
    out += " ; n0=" + std::to_string(spec.n0()) + " ; d=" + spec.d().to_string();
    return out;
}

}  // namespace dcrec
