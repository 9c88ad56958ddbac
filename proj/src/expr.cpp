#include "dcurve/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace dcurve {

namespace {

constexpr int kMaxDepth = 256;

enum class Tok { ident, number, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    double num = 0.0;
    int line = 1;
    int col = 1;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int tl = line, tc = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    ++k;
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                }
            }
            std::string text = src.substr(i, j - i);
            double v = 0.0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (res.ec != std::errc() || !std::isfinite(v))
                throw ValidationError("number literal out of range", tl, tc, text);
            out.push_back({Tok::number, text, v, tl, tc});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Tok::ident, src.substr(i, j - i), 0.0, tl, tc});
            advance(j - i);
            continue;
        }
        if (std::string("+-*/^(),=[]{}").find(c) != std::string::npos) {
            out.push_back({Tok::punct, std::string(1, c), 0.0, tl, tc});
            advance(1);
            continue;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", tl, tc,
                         std::string(1, c));
    }
    out.push_back({Tok::end, "<eof>", 0.0, line, col});
    return out;
}

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr zero_expr() {
    Expr e;
    e.kind = Expr::Kind::number;
    e.number = 0.0;
    return node(std::move(e));
}

struct Parser {
    std::vector<Token> toks;
    size_t i = 0;

    const Token& peek() const { return toks[i]; }
    const Token& get() { return toks[i++]; }

    bool at_punct(const char* p) const {
        return peek().kind == Tok::punct && peek().text == p;
    }
    bool at_ident(const char* name) const {
        return peek().kind == Tok::ident && peek().text == name;
    }

    Token expect_punct(const char* p) {
        if (!at_punct(p))
            throw ParseError("expected '" + std::string(p) + "', found '" + peek().text + "'",
                             peek().line, peek().col, peek().text);
        return get();
    }

    ExprPtr parse_expr(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_term(depth);
        while (at_punct("+") || at_punct("-")) {
            Token op = get();
            ExprPtr rhs = parse_term(depth);
            Expr e;
            e.kind = op.text == "+" ? Expr::Kind::add : Expr::Kind::sub;
            e.a = lhs;
            e.b = rhs;
            e.pos = {op.line, op.col};
            lhs = node(std::move(e));
        }
        return lhs;
    }

    ExprPtr parse_term(int depth) {
        check_depth(depth);
        ExprPtr lhs = parse_unary(depth);
        while (at_punct("*") || at_punct("/")) {
            Token op = get();
            ExprPtr rhs = parse_unary(depth);
            Expr e;
            e.kind = op.text == "*" ? Expr::Kind::mul : Expr::Kind::div;
            e.a = lhs;
            e.b = rhs;
            e.pos = {op.line, op.col};
            lhs = node(std::move(e));
        }
        return lhs;
    }

    ExprPtr parse_unary(int depth) {
        check_depth(depth);
        if (at_punct("-")) {
            Token op = get();
            Expr e;
            e.kind = Expr::Kind::neg;
            e.a = parse_unary(depth + 1);
            e.pos = {op.line, op.col};
            return node(std::move(e));
        }
        return parse_power(depth);
    }

    ExprPtr parse_power(int depth) {
        check_depth(depth);
        ExprPtr base = parse_primary(depth);
        if (!at_punct("^")) return base;
        Token op = get();
        const Token& t = peek();
        if (t.kind != Tok::number)
            throw ParseError("expected integer exponent after '^', found '" + t.text + "'",
                             t.line, t.col, t.text);
        get();
        double ip;
        if (std::modf(t.num, &ip) != 0.0 || t.num < 0.0 || t.num > 1024.0)
            throw ValidationError("exponent must be a nonnegative integer literal", t.line,
                                  t.col, t.text);
        Expr e;
        e.kind = Expr::Kind::pow;
        e.exponent = static_cast<int>(ip);
        e.a = base;
        e.pos = {op.line, op.col};
        return node(std::move(e));
    }

    ExprPtr parse_primary(int depth) {
        check_depth(depth);
        const Token& t = peek();
        if (t.kind == Tok::number) {
            get();
            Expr e;
            e.kind = Expr::Kind::number;
            e.number = t.num;
            e.pos = {t.line, t.col};
            return node(std::move(e));
        }
        if (t.kind == Tok::ident) {
            if (t.text == "s") {
                get();
                Expr e;
                e.kind = Expr::Kind::var;
                e.pos = {t.line, t.col};
                return node(std::move(e));
            }
            if (t.text == "pi") {
                get();
                Expr e;
                e.kind = Expr::Kind::pi;
                e.pos = {t.line, t.col};
                return node(std::move(e));
            }
            static const std::map<std::string, Fn> fns = {
                {"sin", Fn::sin}, {"cos", Fn::cos}, {"tan", Fn::tan}, {"sqrt", Fn::sqrt}};
            auto it = fns.find(t.text);
            if (it == fns.end())
                throw ValidationError("unknown identifier '" + t.text + "'", t.line, t.col,
                                      t.text);
            Token name = get();
            expect_punct("(");
            std::vector<ExprPtr> args;
            args.push_back(parse_expr(depth + 1));
            while (at_punct(",")) {
                get();
                args.push_back(parse_expr(depth + 1));
            }
            expect_punct(")");
            if (args.size() != 1)
                throw ValidationError("function '" + name.text + "' takes 1 argument, got " +
                                          std::to_string(args.size()),
                                      name.line, name.col, name.text);
            Expr e;
            e.kind = Expr::Kind::call;
            e.fn = it->second;
            e.a = args[0];
            e.pos = {name.line, name.col};
            return node(std::move(e));
        }
        if (at_punct("(")) {
            get();
            ExprPtr inner = parse_expr(depth + 1);
            expect_punct(")");
            return inner;
        }
        throw ParseError("expected expression, found '" + t.text + "'", t.line, t.col, t.text);
    }

    void check_depth(int depth) const {
        if (depth > kMaxDepth)
            throw ParseError("expression nesting exceeds " + std::to_string(kMaxDepth),
                             peek().line, peek().col, peek().text);
    }

    double parse_signed_number() {
        bool negate = false;
        if (at_punct("-")) {
            get();
            negate = true;
        }
        const Token& t = peek();
        if (t.kind != Tok::number)
            throw ParseError("expected number, found '" + t.text + "'", t.line, t.col, t.text);
        get();
        return negate ? -t.num : t.num;
    }

    std::array<ExprPtr, 3> parse_vec() {
        expect_punct("(");
        std::array<ExprPtr, 3> v;
        v[0] = parse_expr(0);
        expect_punct(",");
        v[1] = parse_expr(0);
        expect_punct(",");
        v[2] = parse_expr(0);
        expect_punct(")");
        return v;
    }

    CurveDef parse_curve_block() {
        const Token& kw = peek();
        if (!at_ident("curve"))
            throw ParseError("expected 'curve', found '" + kw.text + "'", kw.line, kw.col,
                             kw.text);
        get();
        const Token& name = peek();
        if (name.kind != Tok::ident)
            throw ParseError("expected curve name, found '" + name.text + "'", name.line,
                             name.col, name.text);
        CurveDef def;
        def.name = name.text;
        def.pos = {name.line, name.col};
        get();
        expect_punct("{");

        bool saw_real = false, saw_dual = false, saw_domain = false;
        while (!at_punct("}")) {
            const Token& key = peek();
            if (key.kind != Tok::ident)
                throw ParseError("expected 'real', 'dual', or 'domain', found '" + key.text +
                                     "'",
                                 key.line, key.col, key.text);
            if (key.text == "real") {
                if (saw_real)
                    throw ValidationError("duplicate 'real' entry", key.line, key.col, key.text);
                get();
                expect_punct("=");
                def.real = parse_vec();
                saw_real = true;
            } else if (key.text == "dual") {
                if (saw_dual)
                    throw ValidationError("duplicate 'dual' entry", key.line, key.col, key.text);
                get();
                expect_punct("=");
                def.dual = parse_vec();
                saw_dual = true;
            } else if (key.text == "domain") {
                if (saw_domain)
                    throw ValidationError("duplicate 'domain' entry", key.line, key.col,
                                          key.text);
                get();
                expect_punct("=");
                expect_punct("[");
                def.lo = parse_signed_number();
                expect_punct(",");
                def.hi = parse_signed_number();
                expect_punct("]");
                saw_domain = true;
            } else {
                throw ParseError("expected 'real', 'dual', or 'domain', found '" + key.text +
                                     "'",
                                 key.line, key.col, key.text);
            }
        }
        expect_punct("}");

        if (!saw_real)
            throw ValidationError("curve '" + def.name + "' is missing a 'real' entry",
                                  def.pos.line, def.pos.col, def.name);
        if (!saw_domain)
            throw ValidationError("curve '" + def.name + "' is missing a 'domain' entry",
                                  def.pos.line, def.pos.col, def.name);
        if (!(def.lo < def.hi))
            throw ValidationError("domain must satisfy lo < hi", def.pos.line, def.pos.col,
                                  def.name);
        if (!std::isfinite(def.lo) || !std::isfinite(def.hi))
            throw ValidationError("domain bounds must be finite", def.pos.line, def.pos.col,
                                  def.name);
        def.has_dual = saw_dual;
        if (!saw_dual)
            for (auto& e : def.dual) e = zero_expr();
        return def;
    }
};

int prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub: return 1;
        case Expr::Kind::mul:
        case Expr::Kind::div: return 2;
        case Expr::Kind::neg: return 3;
        case Expr::Kind::pow: return 4;
        default: return 5;
    }
}

std::string num_str(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void print_expr(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
    bool parens = prec(child) < min_prec;
    if (parens) out += '(';
    print_expr(child, out);
    if (parens) out += ')';
}

void print_expr(const Expr& e, std::string& out) {
    switch (e.kind) {
        case Expr::Kind::number: out += num_str(e.number); return;
        case Expr::Kind::var: out += 's'; return;
        case Expr::Kind::pi: out += "pi"; return;
        case Expr::Kind::neg:
            out += '-';
            print_child(*e.a, 3, out);
            return;
        case Expr::Kind::add:
            print_child(*e.a, 1, out);
            out += " + ";
            print_child(*e.b, 2, out);
            return;
        case Expr::Kind::sub:
            print_child(*e.a, 1, out);
            out += " - ";
            print_child(*e.b, 2, out);
            return;
        case Expr::Kind::mul:
            print_child(*e.a, 2, out);
            out += " * ";
            print_child(*e.b, 3, out);
            return;
        case Expr::Kind::div:
            print_child(*e.a, 2, out);
            out += " / ";
            print_child(*e.b, 3, out);
            return;
        case Expr::Kind::pow:
            print_child(*e.a, 5, out);
            out += '^';
            out += std::to_string(e.exponent);
            return;
        case Expr::Kind::call:
            switch (e.fn) {
                case Fn::sin: out += "sin"; break;
                case Fn::cos: out += "cos"; break;
                case Fn::tan: out += "tan"; break;
                case Fn::sqrt: out += "sqrt"; break;
            }
            out += '(';
            print_expr(*e.a, out);
            out += ')';
            return;
    }
}

}  // namespace

std::vector<CurveDef> parse_curves(const std::string& text) {
    Parser p{lex(text)};
    std::vector<CurveDef> defs;
    std::set<std::string> names;
    while (p.peek().kind != Tok::end) {
        CurveDef def = p.parse_curve_block();
        if (!names.insert(def.name).second)
            throw ValidationError("duplicate curve name '" + def.name + "'", def.pos.line,
                                  def.pos.col, def.name);
        defs.push_back(std::move(def));
    }
    if (defs.empty()) {
        const Token& t = p.peek();
        throw ParseError("no curve blocks found", t.line, t.col, t.text);
    }
    return defs;
}

CurveDef parse_curve(const std::string& text) { return parse_curves(text).front(); }

std::string to_string(const Expr& e) {
    std::string out;
    print_expr(e, out);
    return out;
}

std::string to_string(const CurveDef& c) {
    std::string out = "curve " + c.name + " {\n";
    out += "  real = (" + to_string(*c.real[0]) + ", " + to_string(*c.real[1]) + ", " +
           to_string(*c.real[2]) + ")\n";
    if (c.has_dual)
        out += "  dual = (" + to_string(*c.dual[0]) + ", " + to_string(*c.dual[1]) + ", " +
               to_string(*c.dual[2]) + ")\n";
    out += "  domain = [" + num_str(c.lo) + ", " + num_str(c.hi) + "]\n}\n";
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::number: return a.number == b.number;
        case Expr::Kind::var:
        case Expr::Kind::pi: return true;
        case Expr::Kind::neg: return structurally_equal(*a.a, *b.a);
        case Expr::Kind::add:
        case Expr::Kind::sub:
        case Expr::Kind::mul:
        case Expr::Kind::div:
            return structurally_equal(*a.a, *b.a) && structurally_equal(*a.b, *b.b);
        case Expr::Kind::pow:
            return a.exponent == b.exponent && structurally_equal(*a.a, *b.a);
        case Expr::Kind::call: return a.fn == b.fn && structurally_equal(*a.a, *b.a);
    }
    return false;
}

bool structurally_equal(const CurveDef& a, const CurveDef& b) {
    if (a.name != b.name || a.lo != b.lo || a.hi != b.hi || a.has_dual != b.has_dual)
        return false;
    for (int i = 0; i < 3; ++i) {
        if (!structurally_equal(*a.real[i], *b.real[i])) return false;
        if (!structurally_equal(*a.dual[i], *b.dual[i])) return false;
    }
    return true;
}

}  // namespace dcurve
