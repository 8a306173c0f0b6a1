#ifndef STRIDE_PDDL_LEXER_HPP
#define STRIDE_PDDL_LEXER_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stride::pddl {

struct SourcePos {
    int line = 1;
    int col = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string &message)
        : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message),
          pos(pos),
          message(message) {}

    SourcePos pos;
    std::string message;
};

struct Token {
    enum class Type { LParen, RParen, Symbol, End };
    Type type = Type::End;
    std::string text;
    SourcePos pos;
};

// S-expression tokenizer. Identifiers are case-insensitive in PDDL, so every
// symbol is normalized to lower case here.
class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token &peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

    SourcePos pos() const { return current_.pos; }

private:
    void advance() {
        skip_trivia();
        current_.pos = here_;
        if (at_ >= text_.size()) {
            current_.type = Token::Type::End;
            current_.text.clear();
            return;
        }
        char c = text_[at_];
        if (c == '(') {
            current_.type = Token::Type::LParen;
            current_.text = "(";
            consume();
            return;
        }
        if (c == ')') {
            current_.type = Token::Type::RParen;
            current_.text = ")";
            consume();
            return;
        }
        current_.type = Token::Type::Symbol;
        current_.text.clear();
        while (at_ < text_.size() && !is_delimiter(text_[at_])) {
            current_.text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text_[at_]))));
            consume();
        }
    }

    static bool is_delimiter(char c) {
        return c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c));
    }

    void skip_trivia() {
        while (at_ < text_.size()) {
            char c = text_[at_];
            if (c == ';') {
                while (at_ < text_.size() && text_[at_] != '\n')
                    consume();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                consume();
            } else {
                break;
            }
        }
    }

    void consume() {
        if (text_[at_] == '\n') {
            ++here_.line;
            here_.col = 1;
        } else {
            ++here_.col;
        }
        ++at_;
    }

    std::string_view text_;
    std::size_t at_ = 0;
    SourcePos here_;
    Token current_;
};

} // namespace stride::pddl

#endif
