/* Copyright 2026 The nsi Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "nsi/surface.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace nsi {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

enum class Tok { Ident, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (src.substr(i, 2) == "--") {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (src.substr(i, 2) == "-o") {
            t.kind = Tok::Symbol;
            t.text = "-o";
            advance(2);
        } else if (std::string_view("()<>,{}|[]:.;=*").find(c) != std::string_view::npos) {
            t.kind = Tok::Symbol;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

const std::set<std::string>& keywords() {
    static const std::set<std::string> k = {"fun",  "var", "let",  "tt",  "ff",     "nil",  "cons", "tensor",
                                            "leaf", "node", "zero", "s0", "s1",     "pred", "iszero",
                                            "head", "leq"};
    return k;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    SurfaceProgram program() {
        SurfaceProgram prog;
        while (true) {
            if (at_ident("var")) {
                next();
                std::vector<Token> names;
                while (peek().kind == Tok::Ident && !at_symbol(":")) names.push_back(ident("variable name"));
                if (names.empty()) fail(peek(), "expected variable names after 'var'");
                expect(":");
                Type ty = type();
                expect(";");
                for (const auto& n : names) {
                    decls_[n.text] = ty;
                    prog.declarations.emplace_back(n.text, ty);
                }
            } else if (at_ident("let")) {
                next();
                Token n = ident("definition name");
                expect("=");
                Term body = term();
                expect(";");
                lets_[n.text] = body;
                prog.definitions.emplace_back(n.text, body);
            } else {
                if (peek().kind == Tok::End) fail(peek(), "missing main term");
                prog.main = term();
                if (at_symbol(";")) next();
                if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after the main term");
                return prog;
            }
        }
    }

    Type type_only() {
        Type t = type();
        if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after the type");
        return t;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_symbol(const char* s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Symbol && peek(k).text == s;
    }
    bool at_ident(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }

    void expect(const char* s) {
        if (!at_symbol(s)) {
            const Token& t = peek();
            fail(t, std::string("expected '") + s + "', found " + (t.kind == Tok::End ? "end of input" : "'" + t.text + "'"));
        }
        next();
    }

    Token ident(const char* what) {
        const Token& t = peek();
        if (t.kind != Tok::Ident || keywords().count(t.text))
            fail(t, std::string("expected ") + what + ", found " + (t.kind == Tok::End ? "end of input" : "'" + t.text + "'"));
        return next();
    }

    // ---- types

    Type type() {
        Type left = product_type();
        if (at_symbol("-o")) {
            next();
            return Type::arrow(left, type());
        }
        return left;
    }

    bool at_tensor() const { return at_symbol("(") && peek(1).kind == Tok::Ident && peek(1).text == "x" && at_symbol(")", 2); }

    Type product_type() {
        Type left = atom_type();
        if (at_tensor()) {
            next();
            next();
            next();
            return Type::tensor(left, product_type());
        }
        if (at_symbol("*")) {
            next();
            return Type::product(left, product_type());
        }
        return left;
    }

    Type atom_type() {
        Token t = peek();
        if (at_symbol("(")) {
            next();
            Type inner = type();
            expect(")");
            return inner;
        }
        if (t.kind != Tok::Ident) fail(t, "expected a type");
        next();
        if (t.text == "Dia") return Type::diamond();
        if (t.text == "B") return Type::boolean();
        if (t.text == "I") return Type::iota();
        if (t.text == "L") {
            expect("(");
            Type e = type();
            expect(")");
            return Type::list(e);
        }
        if (t.text == "T") {
            expect("(");
            Type a = type();
            expect(",");
            Type b = type();
            expect(")");
            return Type::tree(a, b);
        }
        fail(t, "unknown type '" + t.text + "'");
    }

    // ---- terms

    Term term() {
        if (at_ident("fun")) {
            next();
            Token name = ident("binder name");
            expect(":");
            Type ty = type();
            expect(".");
            scope_.emplace_back(name.text, ty);
            Term body = term();
            scope_.pop_back();
            return Term::lambda(name.text, ty, body);
        }
        Term t = atom();
        while (starts_atom()) t = Term::app(t, atom());
        return t;
    }

    bool starts_atom() const {
        const Token& t = peek();
        if (t.kind == Tok::Ident) return t.text != "fun" && t.text != "var" && t.text != "let";
        return at_symbol("(") || at_symbol("<") || at_symbol("{");
    }

    Type bracket_type() {
        expect("[");
        Type t = type();
        expect("]");
        return t;
    }

    std::pair<Type, Type> bracket_types() {
        expect("[");
        Type a = type();
        expect(",");
        Type b = type();
        expect("]");
        return {a, b};
    }

    Term atom() {
        Token t = peek();
        if (at_symbol("(")) {
            next();
            if (peek().kind == Tok::Ident && at_symbol(":", 1)) {
                Token name = ident("variable name");
                next();
                Type ty = type();
                expect(")");
                return annotated(name, ty);
            }
            Term inner = term();
            expect(")");
            return inner;
        }
        if (at_symbol("<")) {
            next();
            Term a = term();
            expect(",");
            Term b = term();
            expect(">");
            return Term::pair(a, b);
        }
        if (at_symbol("{")) {
            next();
            Term s = term();
            if (at_symbol("|")) {
                next();
                Term r = term();
                expect("}");
                return Term::tree_brace(s, r);
            }
            expect("}");
            return Term::list_brace(s);
        }
        if (t.kind != Tok::Ident) fail(t, t.kind == Tok::End ? "expected a term, found end of input" : "expected a term, found '" + t.text + "'");
        next();
        const std::string& w = t.text;
        if (w == "tt") return cnst(Const::tt());
        if (w == "ff") return cnst(Const::ff());
        if (w == "zero") return cnst(Const::zero());
        if (w == "s0") return cnst(Const::s0());
        if (w == "s1") return cnst(Const::s1());
        if (w == "pred") return cnst(Const::pred());
        if (w == "iszero") return cnst(Const::iszero());
        if (w == "head") return cnst(Const::head());
        if (w == "nil") return cnst(Const::nil(bracket_type()));
        if (w == "cons") return cnst(Const::cons(bracket_type()));
        if (w == "leq") return cnst(Const::leq(bracket_type()));
        if (w == "tensor" || w == "leaf" || w == "node") {
            auto [a, b] = bracket_types();
            if (w == "tensor") return cnst(Const::tensor(a, b));
            if (w == "leaf") return cnst(Const::leaf(a, b));
            return cnst(Const::node(a, b));
        }
        return resolve(t);
    }

    Term resolve(const Token& t) {
        for (std::size_t k = scope_.size(); k-- > 0;)
            if (scope_[k].first == t.text)
                return Term::bound_var(static_cast<std::uint32_t>(scope_.size() - 1 - k), scope_[k].second);
        if (auto it = lets_.find(t.text); it != lets_.end()) return it->second;
        if (auto it = decls_.find(t.text); it != decls_.end()) return Term::free_var(t.text, it->second);
        return Term::free_var(t.text, Type());
    }

    Term annotated(const Token& name, const Type& ty) {
        for (std::size_t k = scope_.size(); k-- > 0;) {
            if (scope_[k].first != name.text) continue;
            if (scope_[k].second != ty)
                fail(name, "'" + name.text + "' is bound at type " + scope_[k].second.to_string() + ", annotated " +
                               ty.to_string());
            return Term::bound_var(static_cast<std::uint32_t>(scope_.size() - 1 - k), ty);
        }
        if (lets_.count(name.text)) fail(name, "cannot annotate the definition '" + name.text + "'");
        return Term::free_var(name.text, ty);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::pair<std::string, Type>> scope_;
    std::map<std::string, Term> lets_;
    std::map<std::string, Type> decls_;
};

// ---- printing

class Printer {
public:
    Printer(const Term& t, bool annotate_ambiguous) {
        std::map<std::string, int> types_per_name;
        for (const auto& v : free_vars(t)) {
            avoid_.insert(v.name);
            ++types_per_name[v.name];
        }
        if (annotate_ambiguous)
            for (const auto& [name, n] : types_per_name)
                if (n > 1) ambiguous_.insert(name);
    }

    enum class Ctx { Top, Fun, Arg };

    void print(const Term& t, Ctx ctx, std::string& out) {
        switch (t.kind()) {
        case TermKind::FreeVar:
            if (ambiguous_.count(t.name()) && t.type().valid())
                out += "(" + t.name() + " : " + t.type().to_string() + ")";
            else
                out += t.name();
            return;
        case TermKind::BoundVar: out += scope_[scope_.size() - 1 - t.index()]; return;
        case TermKind::Constant: out += t.constant().to_string(); return;
        case TermKind::Lambda: {
            const bool paren = ctx != Ctx::Top;
            if (paren) out += "(";
            std::string name = fresh(t.name());
            out += "fun " + name + ":" + t.type().to_string() + ". ";
            scope_.push_back(name);
            print(t.body(), Ctx::Top, out);
            scope_.pop_back();
            if (paren) out += ")";
            return;
        }
        case TermKind::Pair:
            out += "<";
            print(t.first(), Ctx::Top, out);
            out += ", ";
            print(t.second(), Ctx::Top, out);
            out += ">";
            return;
        case TermKind::App: {
            const bool paren = ctx == Ctx::Arg;
            if (paren) out += "(";
            print(t.fun(), Ctx::Fun, out);
            out += " ";
            print(t.arg(), Ctx::Arg, out);
            if (paren) out += ")";
            return;
        }
        case TermKind::ListBrace:
            out += "{";
            print(t.step(), Ctx::Top, out);
            out += "}";
            return;
        case TermKind::TreeBrace:
            out += "{";
            print(t.step(), Ctx::Top, out);
            out += " | ";
            print(t.leaf_case(), Ctx::Top, out);
            out += "}";
            return;
        }
    }

private:
    bool usable(const std::string& n) const {
        return !avoid_.count(n) && !keywords().count(n) && std::find(scope_.begin(), scope_.end(), n) == scope_.end();
    }

    std::string fresh(const std::string& hint) const {
        std::string base = hint;
        if (base.empty() || !ident_start(base[0]) || !std::all_of(base.begin(), base.end(), ident_char)) base = "x";
        if (usable(base)) return base;
        for (int k = 1;; ++k) {
            std::string n = base + std::to_string(k);
            if (usable(n)) return n;
        }
    }

    std::set<std::string> avoid_;
    std::set<std::string> ambiguous_;
    std::vector<std::string> scope_;
};

}  // namespace

SurfaceProgram parse_program(std::string_view text) { return Parser(text).program(); }

Term parse_term(std::string_view text) { return parse_program(text).main; }

Type parse_type(std::string_view text) { return Parser(text).type_only(); }

std::string pretty(const Term& t) {
    std::string out;
    Printer(t, false).print(t, Printer::Ctx::Top, out);
    return out;
}

std::string pretty_program(const Term& t) {
    std::map<std::string, std::vector<Type>> by_name;
    for (const auto& v : free_vars(t)) by_name[v.name].push_back(v.type);
    std::map<Type, std::vector<std::string>> by_type;
    for (const auto& [name, types] : by_name)
        if (types.size() == 1 && types.front().valid()) by_type[types.front()].push_back(name);
    std::string out;
    for (const auto& [ty, names] : by_type) {
        out += "var";
        for (const auto& n : names) out += " " + n;
        out += " : " + ty.to_string() + ";\n";
    }
    Printer(t, true).print(t, Printer::Ctx::Top, out);
    out += "\n";
    return out;
}

}  // namespace nsi
