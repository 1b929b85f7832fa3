#include <array>
#include <charconv>
#include <cctype>

#include "fuzzyrel/query.hpp"

namespace fuzzyrel {

ParseError::ParseError(std::size_t line, std::size_t column, std::string expected, std::string found)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected " + expected +
            ", found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace query {
namespace {

enum class Tok { word, number, string, lparen, rparen, comma, eq, ge, gt, dot, semi, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

constexpr std::array kKeywords{"select", "project", "join",  "where", "over",
                               "on",     "with",    "giving", "level", "thres"};

bool is_keyword(std::string_view w) {
    for (const char* k : kKeywords)
        if (iequals(w, k)) return true;
    return false;
}

bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::end: return "end of input";
        case Tok::string: return "\"" + t.text + "\"";
        default: return "'" + t.text + "'";
    }
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    const auto advance = [&](std::size_t n) {
        for (; n > 0; --n, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        const std::size_t l = line, k = col;
        if (word_start(c)) {
            std::size_t j = i;
            while (j < s.size() && word_char(s[j])) ++j;
            out.push_back({Tok::word, std::string(s.substr(i, j - i)), l, k});
            advance(j - i);
        } else if (digit(c)) {
            std::size_t j = i;
            while (j < s.size() && digit(s[j])) ++j;
            if (j + 1 < s.size() && s[j] == '.' && digit(s[j + 1])) {
                ++j;
                while (j < s.size() && digit(s[j])) ++j;
            }
            out.push_back({Tok::number, std::string(s.substr(i, j - i)), l, k});
            advance(j - i);
        } else if (c == '"') {
            std::string text;
            std::size_t j = i + 1;
            for (;; ++j) {
                if (j >= s.size()) throw ParseError(l, k, "closing '\"'", "unterminated string");
                if (s[j] == '"') break;
                if (s[j] == '\\' && j + 1 < s.size() && (s[j + 1] == '"' || s[j + 1] == '\\')) ++j;
                text += s[j];
            }
            out.push_back({Tok::string, std::move(text), l, k});
            advance(j + 1 - i);
        } else if (c == '>' && i + 1 < s.size() && s[i + 1] == '=') {
            out.push_back({Tok::ge, ">=", l, k});
            advance(2);
        } else {
            Tok kind;
            switch (c) {
                case '(': kind = Tok::lparen; break;
                case ')': kind = Tok::rparen; break;
                case ',': kind = Tok::comma; break;
                case '=': kind = Tok::eq; break;
                case '>': kind = Tok::gt; break;
                case '.': kind = Tok::dot; break;
                case ';': kind = Tok::semi; break;
                default: {
                    const auto u = static_cast<unsigned char>(c);
                    std::string shown = std::isprint(u) ? std::string("'") + c + "'" : "byte " + std::to_string(u);
                    throw ParseError(l, k, "a token", shown);
                }
            }
            out.push_back({kind, std::string(1, c), l, k});
            advance(1);
        }
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    std::vector<Node> script() {
        std::vector<Node> out;
        out.push_back(statement());
        while (accept(Tok::semi)) {
            if (peek().kind == Tok::end) break;
            out.push_back(statement());
        }
        expect(Tok::end, "';' or end of input");
        return out;
    }

    Node single() {
        Node n = statement();
        accept(Tok::semi);
        expect(Tok::end, "end of input");
        return n;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, expected, describe(t));
    }

    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const std::string& what) {
        if (peek().kind != k) fail(what);
        return next();
    }
    bool at_keyword(std::string_view kw, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::word && iequals(peek(ahead).text, kw);
    }
    bool accept_keyword(std::string_view kw) {
        if (!at_keyword(kw)) return false;
        ++pos_;
        return true;
    }
    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) fail("'" + std::string(kw) + "'");
    }
    bool at_bare_word(std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::word && !is_keyword(peek(ahead).text);
    }

    Node statement() {
        Node n = query();
        accept(Tok::dot);
        return n;
    }

    Node query() {
        Node n;
        if (accept(Tok::lparen)) {
            n = query();
            expect(Tok::rparen, "')'");
        } else {
            n = expr();
        }
        if (accept_keyword("giving")) {
            if (n.giving) fail("end of query");
            n.giving = name("result name");
        }
        return n;
    }

    Node expr() {
        if (accept(Tok::lparen)) {
            Node n = expr();
            expect(Tok::rparen, "')'");
            return n;
        }
        Node n;
        if (accept_keyword("select")) {
            n.kind = NodeKind::select;
            n.children.push_back(operand());
            expect_keyword("where");
            do n.conditions.push_back(condition());
            while (continues_with([this] { return at_condition(); }));
        } else if (accept_keyword("project")) {
            n.kind = NodeKind::project;
            n.children.push_back(operand());
            if (accept_keyword("over")) names(n.attributes);
        } else if (accept_keyword("join")) {
            n.kind = NodeKind::join;
            expect(Tok::lparen, "'('");
            n.children.push_back(expr());
            expect(Tok::comma, "','");
            n.children.push_back(expr());
            expect(Tok::rparen, "')'");
            expect_keyword("on");
            names(n.attributes);
        } else {
            n.kind = NodeKind::relation;
            n.name = name("relation name or 'select', 'project', 'join'");
            return n;
        }
        if (accept_keyword("with")) {
            do n.levels.push_back(level());
            while (continues_with([this] { return at_keyword("level") || at_keyword("thres"); }));
        }
        return n;
    }

    Node operand() {
        expect(Tok::lparen, "'('");
        Node n = expr();
        expect(Tok::rparen, "')'");
        return n;
    }

    // Consumes a ',' only when what follows continues the current list.
    template <class Pred>
    bool continues_with(Pred starts_item) {
        if (peek().kind != Tok::comma) return false;
        ++pos_;
        if (starts_item()) return true;
        --pos_;
        return false;
    }

    bool at_condition() const {
        std::size_t k = 0;
        if (peek().kind == Tok::string) {
            k = 1;
        } else {
            while (at_bare_word(k)) ++k;
        }
        return k > 0 && peek(k).kind == Tok::eq;
    }

    void names(std::vector<std::string>& out) {
        do out.push_back(name("attribute name"));
        while (accept(Tok::comma));
    }

    std::string name(const std::string& what) {
        if (peek().kind == Tok::string) {
            if (peek().text.empty()) fail("non-empty " + what);
            return next().text;
        }
        if (!at_bare_word()) fail(what);
        std::string out = next().text;
        while (at_bare_word()) out += " " + next().text;
        return out;
    }

    CondClause condition() {
        CondClause c;
        c.attribute = name("attribute name");
        expect(Tok::eq, "'='");
        if (peek().kind == Tok::string) {
            c.literal = next().text;
        } else if (peek().kind == Tok::number) {
            c.literal = number();
        } else if (at_bare_word()) {
            c.literal = name("literal");
        } else {
            fail("literal");
        }
        return c;
    }

    double number() {
        const Token& t = expect(Tok::number, "number");
        double v = 0;
        const auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (r.ec != std::errc()) throw ParseError(t.line, t.column, "number", describe(t));
        return v;
    }

    LevelClause level() {
        LevelClause c;
        if (accept_keyword("level")) {
            c.keyword = LevelKeyword::level;
        } else if (accept_keyword("thres")) {
            c.keyword = LevelKeyword::thres;
        } else {
            fail("'level' or 'thres'");
        }
        expect(Tok::lparen, "'('");
        c.attribute = name("attribute name");
        expect(Tok::rparen, "')'");
        if (accept(Tok::eq)) {
            c.comparator = Comparator::eq;
        } else if (accept(Tok::ge)) {
            c.comparator = Comparator::ge;
        } else if (accept(Tok::gt)) {
            c.comparator = Comparator::gt;
        } else {
            fail("'=', '>=' or '>'");
        }
        const Token& at = peek();
        c.value = number();
        if (c.value > 1.0) throw ParseError(at.line, at.column, "level in [0, 1]", describe(at));
        return c;
    }
};

std::string fixed_decimal(double v) {
    char buf[400];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    return std::string(buf, r.ptr);
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string render_name(const std::string& n) {
    bool bare = !n.empty() && word_start(n.front());
    std::size_t start = 0;
    while (bare && start <= n.size()) {
        std::size_t end = n.find(' ', start);
        if (end == std::string::npos) end = n.size();
        const std::string_view w(n.data() + start, end - start);
        if (w.empty() || !word_start(w.front()) || is_keyword(w)) bare = false;
        for (char c : w) bare = bare && word_char(c);
        start = end + 1;
    }
    return bare ? n : quoted(n);
}

std::string render_expr(const Node& n) {
    std::string out;
    const auto list = [](const std::vector<std::string>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + render_name(xs[i]);
        return s;
    };
    switch (n.kind) {
        case NodeKind::relation: return render_name(n.name);
        case NodeKind::select:
            out = "select (" + render_expr(n.children.at(0)) + ") where ";
            for (std::size_t i = 0; i < n.conditions.size(); ++i) {
                const auto& c = n.conditions[i];
                out += (i ? ", " : "") + render_name(c.attribute) + " = ";
                if (const auto* d = std::get_if<double>(&c.literal))
                    out += fixed_decimal(*d);
                else
                    out += quoted(std::get<std::string>(c.literal));
            }
            break;
        case NodeKind::project:
            out = "project (" + render_expr(n.children.at(0)) + ")";
            if (!n.attributes.empty()) out += " over " + list(n.attributes);
            break;
        case NodeKind::join: {
            const Node& l = n.children.at(0);
            const bool wrap = l.kind != NodeKind::relation;
            out = "join (" + (wrap ? "(" + render_expr(l) + ")" : render_expr(l)) + ", " +
                  render_expr(n.children.at(1)) + ") on " + list(n.attributes);
            break;
        }
    }
    for (std::size_t i = 0; i < n.levels.size(); ++i) {
        const auto& c = n.levels[i];
        out += i ? ", " : " with ";
        out += c.keyword == LevelKeyword::level ? "level(" : "thres(";
        out += render_name(c.attribute) + ") ";
        out += c.comparator == Comparator::eq ? "=" : c.comparator == Comparator::ge ? ">=" : ">";
        out += " " + fixed_decimal(c.value);
    }
    return out;
}

}  // namespace

Node parse(std::string_view text) { return Parser(text).single(); }

std::vector<Node> parse_script(std::string_view text) { return Parser(text).script(); }

std::string render(const Node& n) {
    std::string out = render_expr(n);
    if (n.giving) out += " giving " + render_name(*n.giving);
    return out;
}

}  // namespace query
}  // namespace fuzzyrel
