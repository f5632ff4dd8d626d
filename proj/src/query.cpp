#include "dds/query.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace dds {

namespace {

enum class ColType { Int, Real, Text, Bool };

const std::map<std::string, ColType>& column_types() {
    static const std::map<std::string, ColType> types = {
        {"id", ColType::Int},          {"symbol", ColType::Text},
        {"complexity", ColType::Int},  {"geometry", ColType::Text},
        {"curvature", ColType::Text},  {"euler", ColType::Real},
        {"orbifold", ColType::Text},   {"symmetry_class", ColType::Text},
        {"signature", ColType::Text},  {"tile_deg", ColType::Text},
        {"vertex_deg", ColType::Text}, {"tiles", ColType::Int},
        {"edges", ColType::Int},       {"vertices", ColType::Int},
        {"normal", ColType::Bool},     {"maximal", ColType::Bool},
        {"colorable", ColType::Bool},  {"orientable", ColType::Bool},
        {"fixed_point_free", ColType::Bool},
        {"self_dual", ColType::Bool}};
    return types;
}

struct Token {
    enum class Kind { Ident, Int, String, Op, LParen, RParen, And, Or, Not, End };
    Kind kind = Kind::End;
    std::string text;
    long long value = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }
    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
        cur_ = Token{};
        cur_.pos = pos_;
        if (pos_ >= text_.size()) {
            cur_.kind = Token::Kind::End;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
                ++pos_;
            cur_.text = text_.substr(start, pos_ - start);
            if (cur_.text == "and") cur_.kind = Token::Kind::And;
            else if (cur_.text == "or") cur_.kind = Token::Kind::Or;
            else if (cur_.text == "not") cur_.kind = Token::Kind::Not;
            else cur_.kind = Token::Kind::Ident;
            return;
        }
        if (std::isdigit((unsigned char)c) ||
            (c == '-' && pos_ + 1 < text_.size() && std::isdigit((unsigned char)text_[pos_ + 1]))) {
            std::size_t start = pos_;
            if (c == '-') ++pos_;
            while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
            cur_.kind = Token::Kind::Int;
            cur_.text = text_.substr(start, pos_ - start);
            cur_.value = std::stoll(cur_.text);
            return;
        }
        if (c == '\'') {
            std::size_t start = ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '\'') ++pos_;
            if (pos_ >= text_.size()) throw QueryError(start - 1, "unterminated string literal");
            cur_.kind = Token::Kind::String;
            cur_.text = text_.substr(start, pos_ - start);
            ++pos_;
            return;
        }
        if (c == '(') {
            cur_.kind = Token::Kind::LParen;
            ++pos_;
            return;
        }
        if (c == ')') {
            cur_.kind = Token::Kind::RParen;
            ++pos_;
            return;
        }
        auto two = text_.substr(pos_, 2);
        for (const char* op : {"!=", "<=", ">="}) {
            if (two == op) {
                cur_.kind = Token::Kind::Op;
                cur_.text = op;
                pos_ += 2;
                return;
            }
        }
        if (c == '=' || c == '<' || c == '>') {
            cur_.kind = Token::Kind::Op;
            cur_.text = std::string(1, c);
            ++pos_;
            return;
        }
        throw QueryError(pos_, std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token cur_;
};

CompareOp op_from(const std::string& text, std::size_t pos) {
    if (text == "=") return CompareOp::Eq;
    if (text == "!=") return CompareOp::Ne;
    if (text == "<") return CompareOp::Lt;
    if (text == "<=") return CompareOp::Le;
    if (text == ">") return CompareOp::Gt;
    if (text == ">=") return CompareOp::Ge;
    throw QueryError(pos, "unknown operator " + text);
}

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    QueryExpr parse() {
        QueryExpr e = expr();
        if (lex_.peek().kind != Token::Kind::End)
            throw QueryError(lex_.peek().pos, "trailing input");
        return e;
    }

private:
    QueryExpr expr() {
        QueryExpr acc = term();
        for (;;) {
            auto kind = lex_.peek().kind;
            if (kind != Token::Kind::And && kind != Token::Kind::Or) return acc;
            lex_.take();
            QueryExpr rhs = term();
            QueryExpr combined;
            combined.kind = kind == Token::Kind::And ? QueryExpr::Kind::And : QueryExpr::Kind::Or;
            combined.lhs = std::make_unique<QueryExpr>(std::move(acc));
            combined.rhs = std::make_unique<QueryExpr>(std::move(rhs));
            acc = std::move(combined);
        }
    }

    QueryExpr term() {
        if (lex_.peek().kind == Token::Kind::Not) {
            lex_.take();
            QueryExpr inner = term();
            QueryExpr e;
            e.kind = QueryExpr::Kind::Not;
            e.lhs = std::make_unique<QueryExpr>(std::move(inner));
            return e;
        }
        if (lex_.peek().kind == Token::Kind::LParen) {
            lex_.take();
            QueryExpr e = expr();
            if (lex_.peek().kind != Token::Kind::RParen)
                throw QueryError(lex_.peek().pos, "expected ')'");
            lex_.take();
            return e;
        }
        return comparison();
    }

    QueryExpr comparison() {
        Token ident = lex_.take();
        if (ident.kind != Token::Kind::Ident)
            throw QueryError(ident.pos, "expected a column name");
        auto it = column_types().find(ident.text);
        if (it == column_types().end()) {
            std::string valid;
            for (const auto& [name, type] : column_types()) {
                if (!valid.empty()) valid += ", ";
                valid += name;
            }
            throw QueryError(ident.pos, "unknown column '" + ident.text +
                                            "'; valid columns: " + valid);
        }
        Token op = lex_.take();
        if (op.kind != Token::Kind::Op) throw QueryError(op.pos, "expected a comparison operator");
        Token lit = lex_.take();

        QueryExpr e;
        e.kind = QueryExpr::Kind::Compare;
        e.column = ident.text;
        e.op = op_from(op.text, op.pos);
        switch (it->second) {
            case ColType::Int:
            case ColType::Real:
                if (lit.kind != Token::Kind::Int)
                    throw QueryError(lit.pos, "column '" + ident.text +
                                                  "' is numeric and needs an integer literal");
                e.literal_is_string = false;
                e.int_value = lit.value;
                break;
            case ColType::Text:
                if (lit.kind != Token::Kind::String)
                    throw QueryError(lit.pos, "column '" + ident.text +
                                                  "' is text and needs a quoted string");
                e.literal_is_string = true;
                e.string_value = lit.text;
                break;
            case ColType::Bool:
                if (lit.kind != Token::Kind::String || (lit.text != "true" && lit.text != "false"))
                    throw QueryError(lit.pos, "column '" + ident.text +
                                                  "' is boolean and compares against 'true' or "
                                                  "'false'");
                e.literal_is_string = true;
                e.string_value = lit.text;
                break;
        }
        return e;
    }

    Lexer lex_;
};

template <typename T>
bool compare(CompareOp op, const T& a, const T& b) {
    switch (op) {
        case CompareOp::Eq: return a == b;
        case CompareOp::Ne: return a != b;
        case CompareOp::Lt: return a < b;
        case CompareOp::Le: return a <= b;
        case CompareOp::Gt: return a > b;
        case CompareOp::Ge: return a >= b;
    }
    return false;
}

}  // namespace

QueryExpr parse_query(const std::string& text) { return Parser(text).parse(); }

bool eval_query_on(const QueryExpr& q, const TilingRecord& r) {
    switch (q.kind) {
        case QueryExpr::Kind::And: return eval_query_on(*q.lhs, r) && eval_query_on(*q.rhs, r);
        case QueryExpr::Kind::Or: return eval_query_on(*q.lhs, r) || eval_query_on(*q.rhs, r);
        case QueryExpr::Kind::Not: return !eval_query_on(*q.lhs, r);
        case QueryExpr::Kind::Compare: break;
    }
    const std::string& col = q.column;
    if (col == "id") return compare(q.op, r.id, q.int_value);
    if (col == "complexity") return compare(q.op, (long long)r.complexity, q.int_value);
    if (col == "tiles") return compare(q.op, (long long)r.tiles, q.int_value);
    if (col == "edges") return compare(q.op, (long long)r.edges, q.int_value);
    if (col == "vertices") return compare(q.op, (long long)r.vertices, q.int_value);
    if (col == "euler") return compare(q.op, r.euler, (double)q.int_value);
    auto text_field = [&](const std::string& v) { return compare(q.op, v, q.string_value); };
    if (col == "symbol") return text_field(r.symbol);
    if (col == "geometry") return text_field(r.geometry);
    if (col == "curvature") return text_field(r.curvature);
    if (col == "orbifold") return text_field(r.orbifold);
    if (col == "symmetry_class") return text_field(r.symmetry_class);
    if (col == "signature") return text_field(r.signature);
    if (col == "tile_deg") return text_field(r.tile_deg);
    if (col == "vertex_deg") return text_field(r.vertex_deg);
    auto bool_field = [&](bool v) {
        return compare(q.op, std::string(v ? "true" : "false"), q.string_value);
    };
    if (col == "normal") return bool_field(r.normal);
    if (col == "maximal") return bool_field(r.maximal);
    if (col == "colorable") return bool_field(r.colorable);
    if (col == "orientable") return bool_field(r.orientable);
    if (col == "fixed_point_free") return bool_field(r.fixed_point_free);
    if (col == "self_dual") return bool_field(r.self_dual);
    throw std::logic_error("internal: unmapped column " + col);
}

std::vector<TilingRecord> eval_query(const QueryExpr& q, const std::vector<TilingRecord>& rows) {
    std::vector<TilingRecord> out;
    for (const TilingRecord& r : rows)
        if (eval_query_on(q, r)) out.push_back(r);
    std::sort(out.begin(), out.end(),
              [](const TilingRecord& a, const TilingRecord& b) { return a.id < b.id; });
    return out;
}

}  // namespace dds
