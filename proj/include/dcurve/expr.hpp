#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "dcurve/errors.hpp"

namespace dcurve {

struct SrcPos {
    int line = 0;
    int col = 0;
};

struct ParseError : Error {
    int line;
    int column;
    std::string token;
    ParseError(const std::string& msg, int l, int c, std::string tok)
        : Error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
          line(l), column(c), token(std::move(tok)) {}
};

// semantic rejection (unknown name, bad arity, bad value); still a positioned parse failure
struct ValidationError : ParseError {
    using ParseError::ParseError;
};

enum class Fn { sin, cos, tan, sqrt };

/// Immutable expression tree in the curve parameter s; shared freely across threads.
struct Expr {
    enum class Kind { number, var, pi, neg, add, sub, mul, div, pow, call };
    Kind kind{};
    double number = 0.0;                // Kind::number
    int exponent = 0;                   // Kind::pow
    Fn fn{};                            // Kind::call
    std::shared_ptr<const Expr> a, b;   // operands
    SrcPos pos;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// One `curve name { ... }` block. Missing dual components default to zero.
struct CurveDef {
    std::string name;
    std::array<ExprPtr, 3> real;
    std::array<ExprPtr, 3> dual;
    bool has_dual = false;
    double lo = 0.0;
    double hi = 0.0;
    SrcPos pos;
};

std::vector<CurveDef> parse_curves(const std::string& text);

/// First block of the file.
CurveDef parse_curve(const std::string& text);

std::string to_string(const Expr& e);
std::string to_string(const CurveDef& c);

bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const CurveDef& a, const CurveDef& b);

/// Evaluates over any jet ring J (Jet<double,N> in practice); errors gain source positions.
template <class J>
J eval_expr(const Expr& e, const J& var) {
    using T = typename J::value_type;
    switch (e.kind) {
        case Expr::Kind::number: return J::constant(T(e.number));
        case Expr::Kind::var: return var;
        case Expr::Kind::pi: return J::constant(T(std::acos(-1.0)));
        case Expr::Kind::neg: return -eval_expr(*e.a, var);
        case Expr::Kind::add: return eval_expr(*e.a, var) + eval_expr(*e.b, var);
        case Expr::Kind::sub: return eval_expr(*e.a, var) - eval_expr(*e.b, var);
        case Expr::Kind::mul: return eval_expr(*e.a, var) * eval_expr(*e.b, var);
        case Expr::Kind::div: {
            J num = eval_expr(*e.a, var);
            J den = eval_expr(*e.b, var);
            try {
                return num / den;
            } catch (const EvalError&) {
                throw;
            } catch (const Error& err) {
                throw EvalError(err.what(), e.pos.line, e.pos.col);
            }
        }
        case Expr::Kind::pow: {
            J base = eval_expr(*e.a, var);
            try {
                return pow(base, e.exponent);
            } catch (const EvalError&) {
                throw;
            } catch (const Error& err) {
                throw EvalError(err.what(), e.pos.line, e.pos.col);
            }
        }
        case Expr::Kind::call: {
            J arg = eval_expr(*e.a, var);
            try {
                switch (e.fn) {
                    case Fn::sin: return sin(arg);
                    case Fn::cos: return cos(arg);
                    case Fn::tan: return tan(arg);
                    case Fn::sqrt: return sqrt(arg);
                }
            } catch (const EvalError&) {
                throw;
            } catch (const Error& err) {
                throw EvalError(err.what(), e.pos.line, e.pos.col);
            }
        }
    }
    throw Error("corrupt expression node");
}

}  // namespace dcurve
