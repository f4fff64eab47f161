//! Expression grammar shared by the CLI.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' exp)?
//! exp   := '-'? INT ('^' exp)?            right-associative
//! atom  := INT | rho | a | b | eta | x | y | 'tau' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Inputs mentioning x or y denote elements of D; everything else is a
//! scalar in K. Division and negative powers of elements are accepted only
//! for monomials c·xⁱyʲ.

use crate::algebra::{display_expr_element, AlgebraElement, SymbolAlgebra};
use crate::error::Error;
use crate::expr::{Expr, ExprRing};

#[derive(Debug, Clone)]
pub enum Value {
    Scalar(Expr),
    Element(AlgebraElement<Expr>),
}

impl Value {
    pub fn into_element(self) -> AlgebraElement<Expr> {
        match self {
            Value::Scalar(e) => SymbolAlgebra::generic().scalar(e),
            Value::Element(u) => u,
        }
    }

    /// Re-parseable rendering.
    pub fn pretty(&self) -> String {
        match self {
            Value::Scalar(e) => e.to_string(),
            Value::Element(u) => display_expr_element(u),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| Error::Parse {
                column: col,
                message: format!("integer literal `{text}` out of range"),
            })?;
            out.push((Tok::Int(n), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(Error::Parse {
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

pub fn parse_expression(src: &str) -> Result<Value, Error> {
    let mut p = Parser {
        lx: Lexer { toks: lex(src)?, pos: 0 },
        alg: SymbolAlgebra::generic(),
    };
    let v = p.expr()?;
    match p.peek() {
        (Tok::End, _) => Ok(v),
        (t, col) => Err(Error::Parse {
            column: col,
            message: format!("unexpected {}", describe(&t)),
        }),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Op(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

struct Parser {
    lx: Lexer,
    alg: SymbolAlgebra<ExprRing>,
}

impl Parser {
    fn peek(&self) -> (Tok, usize) {
        self.lx.toks[self.lx.pos].clone()
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.peek();
        if t.0 != Tok::End {
            self.lx.pos += 1;
        }
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek().0 == Tok::Op(op) {
            self.lx.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, col: usize, message: impl Into<String>) -> Result<T, Error> {
        Err(Error::Parse {
            column: col,
            message: message.into(),
        })
    }

    fn expect(&mut self, op: char) -> Result<(), Error> {
        let (t, col) = self.peek();
        if self.eat(op) {
            Ok(())
        } else {
            self.fail(col, format!("expected `{op}`, found {}", describe(&t)))
        }
    }

    fn expr(&mut self) -> Result<Value, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.combine(acc, rhs, |e, f| e.add(&f), |alg, u, v| alg.add(&u, &v));
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.combine(acc, rhs, |e, f| e.sub(&f), |alg, u, v| alg.sub(&u, &v));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.combine(acc, rhs, |e, f| e.mul(&f), |alg, u, v| alg.mul(&u, &v));
            } else if self.peek().0 == Tok::Op('/') {
                let col = self.bump().1;
                let rhs = self.unary()?;
                acc = self.divide(acc, rhs, col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value, Error> {
        if self.eat('-') {
            Ok(match self.unary()? {
                Value::Scalar(e) => Value::Scalar(e.neg()),
                Value::Element(u) => Value::Element(self.alg.neg(&u)),
            })
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Value, Error> {
        let base = self.atom()?;
        if self.peek().0 != Tok::Op('^') {
            return Ok(base);
        }
        let col = self.bump().1;
        let k = self.exponent()?;
        match base {
            Value::Scalar(e) => Ok(Value::Scalar(e.pow(k))),
            Value::Element(u) => {
                let b = if k < 0 { self.monomial_inverse(&u, col)? } else { u };
                Ok(Value::Element(self.alg.pow(&b, k.unsigned_abs() as u32)))
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, Error> {
        let negative = self.eat('-');
        let (t, col) = self.bump();
        let Tok::Int(n) = t else {
            return self.fail(col, format!("expected integer exponent, found {}", describe(&t)));
        };
        let mut k = if negative { -n } else { n };
        if self.peek().0 == Tok::Op('^') {
            let col = self.bump().1;
            let e = self.exponent()?;
            let Ok(e) = u32::try_from(e) else {
                return self.fail(col, "exponent of an exponent must be non-negative");
            };
            k = k.checked_pow(e).ok_or(Error::Parse {
                column: col,
                message: "exponent overflow".into(),
            })?;
        }
        Ok(k)
    }

    fn atom(&mut self) -> Result<Value, Error> {
        let (t, col) = self.bump();
        match t {
            Tok::Int(n) => Ok(Value::Scalar(Expr::constant(n))),
            Tok::Ident(name) => match name.as_str() {
                "rho" => Ok(Value::Scalar(Expr::rho())),
                "a" => Ok(Value::Scalar(Expr::a())),
                "b" => Ok(Value::Scalar(Expr::b())),
                "eta" => Ok(Value::Scalar(Expr::eta())),
                "x" => Ok(Value::Element(self.alg.x())),
                "y" => Ok(Value::Element(self.alg.y())),
                "tau" => {
                    self.expect('(')?;
                    let inner = self.expr()?;
                    self.expect(')')?;
                    Ok(match inner {
                        Value::Scalar(e) => Value::Scalar(e.tau()),
                        Value::Element(u) => Value::Element(self.alg.tau(&u)),
                    })
                }
                _ => self.fail(col, format!("unknown identifier `{name}`")),
            },
            Tok::Op('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            other => self.fail(col, format!("expected an operand, found {}", describe(&other))),
        }
    }

    fn combine(
        &self,
        l: Value,
        r: Value,
        scalar: impl Fn(Expr, Expr) -> Expr,
        element: impl Fn(&SymbolAlgebra<ExprRing>, AlgebraElement<Expr>, AlgebraElement<Expr>) -> AlgebraElement<Expr>,
    ) -> Value {
        match (l, r) {
            (Value::Scalar(e), Value::Scalar(f)) => Value::Scalar(scalar(e, f)),
            (l, r) => Value::Element(element(&self.alg, l.into_element(), r.into_element())),
        }
    }

    fn divide(&self, l: Value, r: Value, col: usize) -> Result<Value, Error> {
        match (l, r) {
            (Value::Scalar(e), Value::Scalar(f)) => Ok(Value::Scalar(e.div(&f))),
            (Value::Element(u), Value::Scalar(f)) => Ok(Value::Element(self.alg.scale(&f.inv(), &u))),
            (l, Value::Element(v)) => {
                let inv = self.monomial_inverse(&v, col)?;
                Ok(Value::Element(self.alg.mul(&l.into_element(), &inv)))
            }
        }
    }

    /// (c·xⁱyʲ)⁻¹ = c⁻¹·y⁻ʲ·x⁻ⁱ.
    fn monomial_inverse(&self, u: &AlgebraElement<Expr>, col: usize) -> Result<AlgebraElement<Expr>, Error> {
        let support: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .filter(|&(i, j)| !u.coeff(i, j).is_literal_zero())
            .collect();
        let [(i, j)] = support[..] else {
            return self.fail(col, "only monomials c*x^i*y^j can be inverted");
        };
        let alg = &self.alg;
        let y_inv = alg.y_inv().expect("b is a literal nonzero");
        let x_inv = alg.x_inv().expect("a is a literal nonzero");
        let inv = alg.mul(&alg.pow(&y_inv, j as u32), &alg.pow(&x_inv, i as u32));
        Ok(alg.scale(&u.coeff(i, j).inv(), &inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::symbolic_evaluator;
    use crate::fields::RatFunc;

    fn sym_element(v: &Value) -> AlgebraElement<RatFunc> {
        SymbolAlgebra::<ExprRing>::eval(&mut symbolic_evaluator(), &v.clone().into_element()).unwrap()
    }

    fn same(v: &Value, w: &Value) -> bool {
        SymbolAlgebra::symbolic().equal(&sym_element(v), &sym_element(w))
    }

    #[test]
    fn y_times_x() {
        let v = parse_expression("y*x").unwrap();
        assert!(matches!(v, Value::Element(_)));
        assert!(same(&v, &parse_expression("rho*x*y").unwrap()));
    }

    #[test]
    fn tau_of_b_times_b_squared() {
        let Value::Scalar(e) = parse_expression("tau(b)*b^2").unwrap() else {
            panic!("expected a scalar");
        };
        assert!(crate::expr::symbolic_equal(&e, &Expr::eta().pow(5)));
    }

    #[test]
    fn errors_carry_columns() {
        let col = |s: &str| match parse_expression(s) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(col("x^^2"), 3);
        assert_eq!(col("a + zeta"), 5);
        assert_eq!(col("(a"), 3);
        assert_eq!(col("a $ b"), 3);
        assert_eq!(col("1/(x+y)"), 2);
        assert_eq!(col("a b"), 3);
    }

    #[test]
    fn precedence_and_associativity() {
        let two = |s| parse_expression(s).unwrap();
        assert!(same(&two("-a^2"), &two("-(a^2)")));
        assert!(same(&two("a^2^3"), &two("a^8")));
        assert!(same(&two("a - b - eta"), &two("(a - b) - eta")));
        assert!(same(&two("a/b/eta"), &two("a/(b*eta)")));
        assert!(same(&two("x^-1"), &two("a^-1*x^4")));
        assert!(same(&two("1/y"), &two("b^-1*y^4")));
        // x y⁻¹ x⁻¹ = ρy⁻¹
        assert!(same(&two("x/(2*x*y)"), &two("rho*y^-1/2")));
    }

    #[test]
    fn pretty_round_trip() {
        let corpus = [
            "0",
            "rho",
            "a^-1 - 3*eta",
            "(a + b)^2 / (eta - 1)",
            "tau(eta)^3",
            "(a^2)^3",
            "x + a^-1*x^4",
            "y*x",
            "tau(y)",
            "(1 + rho)*x^2*y^3 - eta*y",
            "tau(tau(x*y))",
            "5",
        ];
        for src in corpus {
            let v = parse_expression(src).unwrap();
            let w = parse_expression(&v.pretty()).unwrap_or_else(|e| panic!("{src}: {e}"));
            assert!(same(&v, &w), "{src}");
        }
    }
}
