//! Text grammar shared by every order.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' NAT)?
//! atom   := NAT | 'N' | 'L' '(' expr ')' | 'F' '(' expr ')' | 'D'
//!         | 'max' '(' expr (',' expr)+ ')' | 'Delta' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `D`, `max` and `Delta` belong to arctic terms, `F` to third-order
//! polynomials. `Λ`, `Δ` and `·` are accepted for `L`, `Delta` and `*`.
//! For second- and third-order polynomials literals and powers are sugar for
//! left-nested chains of `1` and of factors; the printer folds such chains
//! back, so printing and parsing are mutually inverse.

use crate::arctic::{ArcticTerm, ArcticTerm2};
use crate::{Error, Natural, Poly1, Poly2, Poly3, Result, Var};
use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_traits::{ToPrimitive, Zero};

/// Largest literal or exponent expanded into a chain.
pub const MAX_SUGAR: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Auto,
    P2,
    P3,
    Arctic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    P2(Poly2),
    P3(Poly3),
    Arctic(ArcticTerm),
    Arctic2(ArcticTerm2),
}

impl core::fmt::Display for Expr {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Expr::P2(p) => p.fmt(f),
            Expr::P3(p) => p.fmt(f),
            Expr::Arctic(t) => t.fmt(f),
            Expr::Arctic2(t) => t.fmt(f),
        }
    }
}

/// Parsed input together with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceExpr {
    pub text: String,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(Natural),
    Ident(&'static str),
    Var,
    Plus,
    Star,
    Caret,
    Open,
    Close,
    Comma,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Nat(n) => format!("'{n}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Var => "variable".into(),
        Tok::Plus => "'+'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Open => "'('".into(),
        Tok::Close => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str, var: Option<&str>) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            ',' => Tok::Comma,
            'Λ' => Tok::Ident("L"),
            'Δ' => Tok::Ident("Delta"),
            '𝓕' => Tok::Ident("F"),
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Nat(digits.parse().expect("digits")), start));
                continue;
            }
            c if c.is_alphabetic() => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    w if Some(w) == var => Tok::Var,
                    "N" if var.is_none() => Tok::Ident("N"),
                    "L" if var.is_none() => Tok::Ident("L"),
                    "F" if var.is_none() => Tok::Ident("F"),
                    "D" if var.is_none() => Tok::Ident("D"),
                    "max" if var.is_none() => Tok::Ident("max"),
                    "Delta" if var.is_none() => Tok::Ident("Delta"),
                    _ => {
                        return Err(Error::Syntax { pos: start, expected: expected_atom(var), found: format!("'{word}'") });
                    }
                };
                out.push((tok, start));
                continue;
            }
            c => {
                return Err(Error::Syntax { pos: start, expected: expected_atom(var), found: format!("'{c}'") });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

fn expected_atom(var: Option<&str>) -> String {
    match var {
        Some(v) => format!("a number, '{v}' or '('"),
        None => "a number, 'N', 'L', 'F', 'D', 'max', 'Delta' or '('".into(),
    }
}

#[derive(Clone, Debug)]
enum Raw {
    Nat(Natural, usize),
    Var,
    Ident(&'static str, usize),
    App(&'static str, usize, Box<Raw>),
    Max(usize, Vec<Raw>),
    Add(Box<Raw>, Box<Raw>),
    Mul(Box<Raw>, Box<Raw>),
    Pow(Box<Raw>, u32),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    var: Option<&'a str>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn fail<T>(&self, expected: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), expected: expected.into(), found: describe(self.peek()) })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.at += 1;
            Ok(())
        } else {
            self.fail(describe(&t))
        }
    }

    fn expr(&mut self) -> Result<Raw> {
        let mut acc = self.term()?;
        while *self.peek() == Tok::Plus {
            self.at += 1;
            acc = Raw::Add(Box::new(acc), Box::new(self.term()?));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Raw> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.at += 1;
            acc = Raw::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Raw> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.at += 1;
        let k = match self.peek() {
            Tok::Nat(k) => k.to_u64().filter(|k| (1..=MAX_SUGAR).contains(k)),
            _ => return self.fail("an exponent"),
        };
        let Some(k) = k else {
            return self.fail(format!("an exponent between 1 and {MAX_SUGAR}"));
        };
        self.at += 1;
        Ok(Raw::Pow(Box::new(base), k as u32))
    }

    fn atom(&mut self) -> Result<Raw> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Nat(k) => {
                self.at += 1;
                Ok(Raw::Nat(k, pos))
            }
            Tok::Var => {
                self.at += 1;
                Ok(Raw::Var)
            }
            Tok::Ident(name @ ("N" | "D")) => {
                self.at += 1;
                Ok(Raw::Ident(name, pos))
            }
            Tok::Ident(name @ ("L" | "F" | "Delta")) => {
                self.at += 1;
                self.expect(Tok::Open)?;
                let inner = self.expr()?;
                self.expect(Tok::Close)?;
                Ok(Raw::App(name, pos, Box::new(inner)))
            }
            Tok::Ident(_) => {
                self.at += 1;
                self.expect(Tok::Open)?;
                let mut ops = alloc::vec![self.expr()?];
                self.expect(Tok::Comma)?;
                ops.push(self.expr()?);
                while *self.peek() == Tok::Comma {
                    self.at += 1;
                    ops.push(self.expr()?);
                }
                self.expect(Tok::Close)?;
                Ok(Raw::Max(pos, ops))
            }
            Tok::Open => {
                self.at += 1;
                let inner = self.expr()?;
                self.expect(Tok::Close)?;
                Ok(inner)
            }
            _ => self.fail(expected_atom(self.var)),
        }
    }
}

fn parse_raw(text: &str, var: Option<&str>) -> Result<Raw> {
    let mut p = Parser { toks: lex(text, var)?, at: 0, var };
    let raw = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("'+', '*' or end of input");
    }
    Ok(raw)
}

/// First token (position, name) that belongs to each order family.
#[derive(Default)]
struct Features {
    f: Option<(usize, &'static str)>,
    l: Option<(usize, &'static str)>,
    arctic: Option<(usize, &'static str)>,
    delta: bool,
}

fn features(raw: &Raw, out: &mut Features) {
    match raw {
        Raw::Nat(k, pos) => {
            if k.is_zero() {
                out.arctic.get_or_insert((*pos, "0"));
            }
        }
        Raw::Var => {}
        Raw::Ident("D", pos) => {
            out.arctic.get_or_insert((*pos, "D"));
        }
        Raw::Ident(name, pos) => {
            out.l.get_or_insert((*pos, name));
        }
        Raw::App(name, pos, a) => {
            match *name {
                "F" => {
                    out.f.get_or_insert((*pos, "F"));
                }
                "L" => {
                    out.l.get_or_insert((*pos, "L"));
                }
                _ => {
                    out.delta = true;
                    out.arctic.get_or_insert((*pos, "Delta"));
                }
            }
            features(a, out);
        }
        Raw::Max(pos, ops) => {
            out.arctic.get_or_insert((*pos, "max"));
            ops.iter().for_each(|o| features(o, out));
        }
        Raw::Add(a, b) | Raw::Mul(a, b) => {
            features(a, out);
            features(b, out);
        }
        Raw::Pow(a, _) => features(a, out),
    }
}

fn mismatch(found: Option<(usize, &'static str)>, order: &'static str) -> Result<()> {
    match found {
        Some((pos, token)) => Err(Error::OrderMismatch { pos, token: token.into(), order: order.into() }),
        None => Ok(()),
    }
}

/// Parses `text` as an expression of the given order.
pub fn parse(text: &str, order: Order) -> Result<SourceExpr> {
    let raw = parse_raw(text, None)?;
    let mut ft = Features::default();
    features(&raw, &mut ft);
    let order = match order {
        Order::Auto => {
            if let (Some(f), Some(a)) = (ft.f, ft.arctic) {
                let later = if f.0 > a.0 { f } else { a };
                let order = if f.0 > a.0 { "arctic" } else { "third-order" };
                return Err(Error::OrderMismatch { pos: later.0, token: later.1.into(), order: order.into() });
            }
            if ft.f.is_some() {
                Order::P3
            } else if ft.arctic.is_some() {
                Order::Arctic
            } else {
                Order::P2
            }
        }
        o => o,
    };
    let expr = match order {
        Order::P2 => {
            mismatch(ft.f.or(ft.arctic), "second-order")?;
            Expr::P2(to_poly3(&raw)?.to_poly2().expect("no F"))
        }
        Order::P3 => {
            mismatch(ft.arctic, "third-order")?;
            Expr::P3(to_poly3(&raw)?)
        }
        Order::Arctic => {
            mismatch(ft.f.or(ft.l), "arctic")?;
            let t = to_arctic2(&raw);
            if ft.delta {
                Expr::Arctic2(t)
            } else {
                Expr::Arctic(t.to_first_order().expect("no Delta"))
            }
        }
        Order::Auto => unreachable!(),
    };
    Ok(SourceExpr { text: text.into(), expr })
}

pub fn parse_poly2(text: &str) -> Result<Poly2> {
    match parse(text, Order::P2)?.expr {
        Expr::P2(p) => Ok(p),
        _ => unreachable!(),
    }
}

pub fn parse_poly3(text: &str) -> Result<Poly3> {
    match parse(text, Order::P3)?.expr {
        Expr::P3(p) => Ok(p),
        _ => unreachable!(),
    }
}

/// Arctic term without `Delta`.
pub fn parse_arctic(text: &str) -> Result<ArcticTerm> {
    match parse(text, Order::Arctic)?.expr {
        Expr::Arctic(t) => Ok(t),
        Expr::Arctic2(_) => Err(Error::OrderMismatch { pos: 0, token: "Delta".into(), order: "first-order arctic".into() }),
        _ => unreachable!(),
    }
}

/// Arctic term that may contain `Delta`.
pub fn parse_arctic2(text: &str) -> Result<ArcticTerm2> {
    match parse(text, Order::Arctic)?.expr {
        Expr::Arctic(t) => Ok(ArcticTerm2::from(&t)),
        Expr::Arctic2(t) => Ok(t),
        _ => unreachable!(),
    }
}

/// Univariate polynomial over ℕ in the variable named `var`, mapped to
/// `Var(0)`. Only numbers, `var`, `+`, `*`, `^` and parentheses are allowed.
pub fn parse_univariate(text: &str, var: &str) -> Result<Poly1> {
    fn go(r: &Raw) -> Poly1 {
        match r {
            Raw::Nat(k, _) => Poly1::constant(k.clone()),
            Raw::Var => Poly1::var(Var(0)),
            Raw::Add(a, b) => &go(a) + &go(b),
            Raw::Mul(a, b) => &go(a) * &go(b),
            Raw::Pow(a, k) => go(a).pow(*k),
            _ => unreachable!("rejected by the lexer"),
        }
    }
    Ok(go(&parse_raw(text, Some(var))?))
}

fn sugar_count(k: &Natural, pos: usize) -> Result<u64> {
    match k.to_u64() {
        Some(0) => Err(Error::Syntax { pos, expected: "a positive literal".into(), found: "'0'".into() }),
        Some(v) if v <= MAX_SUGAR => Ok(v),
        _ => Err(Error::Syntax { pos, expected: format!("a literal at most {MAX_SUGAR}"), found: format!("'{k}'") }),
    }
}

fn to_poly3(raw: &Raw) -> Result<Poly3> {
    Ok(match raw {
        Raw::Nat(k, pos) => Poly3::literal(sugar_count(k, *pos)?),
        Raw::Ident(_, _) => Poly3::n(),
        Raw::App("L", _, a) => Poly3::lam(to_poly3(a)?),
        Raw::App(_, _, a) => Poly3::app_f(to_poly3(a)?),
        Raw::Add(a, b) => Poly3::add(to_poly3(a)?, to_poly3(b)?),
        Raw::Mul(a, b) => Poly3::mul(to_poly3(a)?, to_poly3(b)?),
        Raw::Pow(a, k) => Poly3::pow(&to_poly3(a)?, *k),
        Raw::Var | Raw::Max(..) => unreachable!("excluded by order check"),
    })
}

fn to_arctic2(raw: &Raw) -> ArcticTerm2 {
    match raw {
        Raw::Nat(k, _) => ArcticTerm2::Const(k.clone()),
        Raw::Ident(_, _) => ArcticTerm2::D,
        Raw::App(_, _, a) => ArcticTerm2::delta(to_arctic2(a)),
        Raw::Max(_, ops) => ArcticTerm2::max(ops.iter().map(to_arctic2)),
        Raw::Add(a, b) => ArcticTerm2::add(to_arctic2(a), to_arctic2(b)),
        Raw::Mul(a, b) => ArcticTerm2::mul(to_arctic2(a), to_arctic2(b)),
        Raw::Pow(a, k) => {
            let base = to_arctic2(a);
            (1..*k).fold(base.clone(), |acc, _| ArcticTerm2::mul(acc, base.clone()))
        }
        Raw::Var => unreachable!("no variable in this mode"),
    }
}

impl From<&ArcticTerm> for ArcticTerm2 {
    fn from(t: &ArcticTerm) -> Self {
        match t {
            ArcticTerm::Const(c) => ArcticTerm2::Const(c.clone()),
            ArcticTerm::Var(_) => ArcticTerm2::D,
            ArcticTerm::Add(a, b) => ArcticTerm2::add(a.as_ref().into(), b.as_ref().into()),
            ArcticTerm::Mul(a, b) => ArcticTerm2::mul(a.as_ref().into(), b.as_ref().into()),
            ArcticTerm::Max(v) => ArcticTerm2::max(v.iter().map(Into::into)),
        }
    }
}

/// Shape of a node as seen by the printer.
pub(crate) enum View<'a, T> {
    One,
    N,
    D,
    Name(u32),
    Nat(&'a Natural),
    Add(&'a T, &'a T),
    Mul(&'a T, &'a T),
    Lam(&'a T),
    F(&'a T),
    Delta(&'a T),
    Max(&'a [T]),
}

pub(crate) trait Printable: Sized + PartialEq {
    fn view(&self) -> View<'_, Self>;
}

/// Canonical text of a term.
pub(crate) fn print<T: Printable>(t: &T) -> String {
    let mut s = String::new();
    expr(t, &mut s);
    s
}

fn spine<'a, T: Printable>(t: &'a T, mul: bool, out: &mut Vec<&'a T>) {
    match (t.view(), mul) {
        (View::Add(a, b), false) | (View::Mul(a, b), true) => {
            spine(a, mul, out);
            out.push(b);
        }
        _ => out.push(t),
    }
}

/// Number of copies of `1` if `t` is a sum consisting only of ones.
fn literal<T: Printable>(t: &T) -> Option<usize> {
    let mut ops = Vec::new();
    spine(t, false, &mut ops);
    (ops.len() >= 2 && ops.iter().all(|o| matches!(o.view(), View::One))).then_some(ops.len())
}

/// `(base, k)` if `t` is a product of `k >= 2` equal factors.
fn power<T: Printable>(t: &T) -> Option<(&T, usize)> {
    let mut ops = Vec::new();
    spine(t, true, &mut ops);
    (ops.len() >= 2 && ops.iter().all(|o| *o == ops[0])).then(|| (ops[0], ops.len()))
}

fn leading_run<T: Printable>(ops: &[&T], pred: impl Fn(&T) -> bool) -> usize {
    ops.iter().take_while(|o| pred(o)).count()
}

fn expr<T: Printable>(t: &T, s: &mut String) {
    if !matches!(t.view(), View::Add(..)) || literal(t).is_some() {
        return term(t, s);
    }
    let mut ops = Vec::new();
    spine(t, false, &mut ops);
    let run = leading_run(&ops, |o| matches!(o.view(), View::One));
    let rest = if run >= 2 {
        s.push_str(&run.to_string());
        &ops[run..]
    } else {
        term(ops[0], s);
        &ops[1..]
    };
    for o in rest {
        s.push_str(" + ");
        term(*o, s);
    }
}

fn term<T: Printable>(t: &T, s: &mut String) {
    if !matches!(t.view(), View::Mul(..)) || power(t).is_some() {
        return factor(t, s);
    }
    let mut ops = Vec::new();
    spine(t, true, &mut ops);
    let first = ops[0];
    let run = leading_run(&ops, |o| o == first);
    if run >= 2 {
        powered(first, run, s);
    } else {
        factor(first, s);
    }
    for o in &ops[run.max(1)..] {
        s.push('*');
        factor(*o, s);
    }
}

fn powered<T: Printable>(base: &T, k: usize, s: &mut String) {
    factor(base, s);
    s.push('^');
    s.push_str(&k.to_string());
}

fn factor<T: Printable>(t: &T, s: &mut String) {
    match t.view() {
        View::One => s.push('1'),
        View::N => s.push('N'),
        View::D => s.push('D'),
        View::Name(i) => s.push_str(&format!("x{i}")),
        View::Nat(k) => s.push_str(&k.to_string()),
        View::Add(..) => match literal(t) {
            Some(k) => s.push_str(&k.to_string()),
            None => {
                s.push('(');
                expr(t, s);
                s.push(')');
            }
        },
        View::Mul(..) => match power(t) {
            Some((base, k)) => powered(base, k, s),
            None => {
                s.push('(');
                term(t, s);
                s.push(')');
            }
        },
        View::Lam(a) | View::F(a) | View::Delta(a) => {
            s.push_str(match t.view() {
                View::Lam(_) => "L(",
                View::F(_) => "F(",
                _ => "Delta(",
            });
            expr(a, s);
            s.push(')');
        }
        View::Max(ops) => {
            s.push_str("max(");
            for (i, o) in ops.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                expr(o, s);
            }
            s.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sugar_expansion() {
        let p = parse_poly2("L(N^2)+N^9").unwrap();
        let n9 = (1..9).fold(Poly2::n(), |acc, _| Poly2::mul(acc, Poly2::n()));
        assert_eq!(p, Poly2::add(Poly2::lam(Poly2::mul(Poly2::n(), Poly2::n())), n9));
        assert_eq!(parse_poly2("3").unwrap(), Poly2::add(Poly2::add(Poly2::one(), Poly2::one()), Poly2::one()));
        assert_eq!(p.to_string(), "L(N^2) + N^9");
    }

    #[test]
    fn arctic_worked_term() {
        let text = "max(D*3*D*5*D + max(2*D,9) + 4, 999 + D*max(5, 8*D+D), 450*D)";
        let t = parse_arctic(text).unwrap();
        assert_eq!(t.to_string(), "max(D*3*D*5*D + max(2*D, 9) + 4, 999 + D*max(5, 8*D + D), 450*D)");
        match &t {
            ArcticTerm::Max(ops) => assert_eq!(ops.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn third_order_round_trip() {
        let p = parse_poly3("F(L(N)*N)*L(F(N))").unwrap();
        assert_eq!(p.to_string(), "F(L(N)*N)*L(F(N))");
        assert_eq!(parse_poly3(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse_poly2("Λ(N)·N").unwrap(), parse_poly2("L(N)*N").unwrap());
        assert_eq!(parse_arctic2("Δ(D)").unwrap(), parse_arctic2("Delta(D)").unwrap());
    }

    #[test]
    fn order_inference() {
        assert!(matches!(parse("L(N)", Order::Auto).unwrap().expr, Expr::P2(_)));
        assert!(matches!(parse("F(N)", Order::Auto).unwrap().expr, Expr::P3(_)));
        assert!(matches!(parse("max(D, 0)", Order::Auto).unwrap().expr, Expr::Arctic(_)));
        assert!(matches!(parse("Delta(1)", Order::Auto).unwrap().expr, Expr::Arctic2(_)));
        assert!(matches!(parse("F(N)", Order::P2), Err(Error::OrderMismatch { pos: 0, .. })));
        assert!(matches!(parse("F(D)", Order::Auto), Err(Error::OrderMismatch { pos: 2, .. })));
        assert!(matches!(parse("L(N)", Order::Arctic), Err(Error::OrderMismatch { .. })));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly2("N + 0"), Err(Error::OrderMismatch { pos: 4, .. })));
        assert!(matches!(parse_poly2("N +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly2("L N"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly2("N^0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly2("x"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_arctic("max(D)"), Err(Error::Syntax { .. })));
        assert!(parse_arctic("D + 0").is_ok());
    }

    #[test]
    fn univariate() {
        let p = parse_univariate("m^2 + 3*m + 1", "m").unwrap();
        assert_eq!(p.eval_univariate(Var(0), &Natural::from(2u32)).unwrap(), Natural::from(11u32));
        assert!(parse_univariate("N", "m").is_err());
    }

    #[test]
    fn tricky_spines() {
        for text in ["1 + 2", "2 + 2", "N + 1 + 1", "N + 2", "1^2", "2^3", "N*N^2", "N^2*N^2", "(N + 1)^3", "N*(N*L(N))", "N + (N + 1)", "2*N + 1"] {
            let p = parse_poly2(text).unwrap();
            assert_eq!(p.to_string(), text);
            assert_eq!(parse_poly2(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let p = random::poly3(&mut rng, 14, 4, true);
            let text = p.to_string();
            let back = parse_poly3(&text).unwrap();
            assert_eq!(back, p, "{text}");
            assert_eq!(back.to_string(), text);
            let q = random::poly2(&mut rng, 14, 4);
            assert_eq!(parse_poly2(&q.to_string()).unwrap(), q);
            let t = random::arctic(&mut rng, 12);
            assert_eq!(parse_arctic(&t.to_string()).unwrap(), t);
            let t2 = random::arctic2(&mut rng, 12);
            assert_eq!(parse_arctic2(&t2.to_string()).unwrap(), t2);
        }
    }
}
