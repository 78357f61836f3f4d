//! Tokenizer and recursive-descent parser for the expression language.

use std::fmt;

use cohodim::cdtype::BasisKind;
use cohodim::groups::{GroupExpr, SumPattern};
use cohodim::prime_base::{ExtInt, ExtNat, Prime, PrimeFn, PrimeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Num(n) => write!(f, "'{n}'"),
            Tok::Sym(s) => write!(f, "'{s}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

// longest first
const SYMBOLS: [&str; 15] = ["[+]", "[x]", "\\/", "(", ")", "{", "}", ",", ":", "=", "/", "^", "+", "-", "∨"];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().expect("nonempty");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            let n = rest[..len].parse().map_err(|_| ParseError { pos: i, msg: "number too large".into() })?;
            out.push((Tok::Num(n), i));
            i += len;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let len = rest.find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).unwrap_or(rest.len());
            out.push((Tok::Ident(rest[..len].to_string()), i));
            i += len;
            continue;
        }
        for s in SYMBOLS {
            if rest.starts_with(s) {
                // the wedge glyph is an alias of \/
                out.push((Tok::Sym(if s == "∨" { "\\/" } else { s }), i));
                i += s.len();
                continue 'outer;
            }
        }
        return Err(ParseError { pos: i, msg: format!("unexpected character '{c}'") });
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Phi(BasisKind, ExtNat),
    Nat(ExtNat),
    Triple { s: PrimeSet, d: PrimeSet, f: PrimeFn<ExtInt> },
    Conj(Box<Expr>),
    Pow(Box<Expr>, u32),
    Test(GroupExpr, ExtNat),
    Sum(Box<Expr>, Box<Expr>),
    Times(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
}

/// A cd-type expression with the byte offset it starts at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Norm(Expr),
    Inorm(Expr),
    Dim(Expr, GroupExpr),
    Sigma(GroupExpr),
    Decompose(Expr),
    Leq(Expr, Expr),
    Phi(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Type(Expr),
    Query(Query),
}

pub fn parse(text: &str) -> Result<Ast, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let ast = p.top()?;
    p.expect_end()?;
    Ok(ast)
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.cdexpr()?;
    p.expect_end()?;
    Ok(e)
}

pub fn parse_group(text: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let g = p.group()?;
    p.expect_end()?;
    Ok(g)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

const QUERIES: [&str; 7] = ["norm", "inorm", "dim", "sigma", "decompose", "leq", "phi"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.err(format!("expected '{sym}', found {}", self.peek()))
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(w) if w == word => {
                self.bump();
                Ok(())
            }
            t => self.err(format!("expected '{word}', found {t}")),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            t => self.err(format!("unexpected {t} after expression")),
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        match self.bump() {
            (Tok::Ident(s), pos) => Ok((s, pos)),
            (t, pos) => Err(ParseError { pos, msg: format!("expected a name, found {t}") }),
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match self.bump() {
            (Tok::Num(n), _) => Ok(n),
            (t, pos) => Err(ParseError { pos, msg: format!("expected a number, found {t}") }),
        }
    }

    fn prime(&mut self) -> Result<Prime, ParseError> {
        let pos = self.pos();
        let n = self.number()?;
        Prime::new(n).map_err(|e| ParseError { pos, msg: e.to_string() })
    }

    /// `nat | inf`
    fn nat(&mut self) -> Result<ExtNat, ParseError> {
        match self.peek() {
            Tok::Ident(w) if w == "inf" => {
                self.bump();
                Ok(ExtNat::Inf)
            }
            _ => Ok(ExtNat::Fin(self.number()?)),
        }
    }

    /// `-? (nat | inf)`
    fn val(&mut self) -> Result<ExtInt, ParseError> {
        let neg = self.eat("-");
        let pos = self.pos();
        let v = match self.nat()? {
            ExtNat::Inf => ExtInt::PosInf,
            ExtNat::Fin(n) => ExtInt::Fin(i64::try_from(n).map_err(|_| ParseError { pos, msg: "value too large".into() })?),
        };
        Ok(if neg { v.checked_neg().expect("negating a parsed value") } else { v })
    }

    fn top(&mut self) -> Result<Ast, ParseError> {
        if let (Tok::Ident(w), Tok::Sym("(")) = (self.peek(), self.peek2()) {
            if QUERIES.contains(&w.as_str()) {
                return Ok(Ast::Query(self.query()?));
            }
        }
        Ok(Ast::Type(self.cdexpr()?))
    }

    fn query(&mut self) -> Result<Query, ParseError> {
        let (name, _) = self.ident()?;
        self.expect("(")?;
        let q = match name.as_str() {
            "norm" => Query::Norm(self.cdexpr()?),
            "inorm" => Query::Inorm(self.cdexpr()?),
            "dim" => {
                let e = self.cdexpr()?;
                self.expect(",")?;
                Query::Dim(e, self.group()?)
            }
            "sigma" => Query::Sigma(self.group()?),
            "decompose" => Query::Decompose(self.cdexpr()?),
            "leq" => {
                let a = self.cdexpr()?;
                self.expect(",")?;
                Query::Leq(a, self.cdexpr()?)
            }
            "phi" => Query::Phi(self.cdexpr()?),
            _ => unreachable!("checked against QUERIES"),
        };
        self.expect(")")?;
        Ok(q)
    }

    fn cdexpr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.pterm()?;
        while *self.peek() == Tok::Sym("\\/") {
            self.bump();
            let rhs = self.pterm()?;
            let pos = lhs.pos;
            lhs = Expr { kind: ExprKind::Wedge(Box::new(lhs), Box::new(rhs)), pos };
        }
        Ok(lhs)
    }

    fn pterm(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.xterm()?;
        while *self.peek() == Tok::Sym("[+]") {
            self.bump();
            let rhs = self.xterm()?;
            let pos = lhs.pos;
            lhs = Expr { kind: ExprKind::Sum(Box::new(lhs), Box::new(rhs)), pos };
        }
        Ok(lhs)
    }

    fn xterm(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.atom()?;
        while *self.peek() == Tok::Sym("[x]") {
            self.bump();
            let rhs = self.atom()?;
            let pos = lhs.pos;
            lhs = Expr { kind: ExprKind::Times(Box::new(lhs), Box::new(rhs)), pos };
        }
        Ok(lhs)
    }

    fn binary(&mut self, pos: usize, make: fn(Box<Expr>, Box<Expr>) -> ExprKind) -> Result<Expr, ParseError> {
        let a = self.cdexpr()?;
        self.expect(",")?;
        let b = self.cdexpr()?;
        self.expect(")")?;
        Ok(Expr { kind: make(Box::new(a), Box::new(b)), pos })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        if self.eat("(") {
            let e = self.cdexpr()?;
            self.expect(")")?;
            return Ok(e);
        }
        let (name, _) = self.ident()?;
        self.expect("(")?;
        let kind = match name.as_str() {
            "Phi" => {
                let kind = self.basis()?;
                self.expect(",")?;
                let n = self.nat()?;
                ExprKind::Phi(kind, n)
            }
            "nat" => ExprKind::Nat(self.nat()?),
            "triple" => self.triple()?,
            "conj" => ExprKind::Conj(Box::new(self.cdexpr()?)),
            "pow" => {
                let e = self.cdexpr()?;
                self.expect(",")?;
                let kpos = self.pos();
                let k = self.number()?;
                let k = u32::try_from(k).map_err(|_| ParseError { pos: kpos, msg: "power too large".into() })?;
                ExprKind::Pow(Box::new(e), k)
            }
            "test" => {
                let g = self.group()?;
                self.expect(",")?;
                ExprKind::Test(g, self.nat()?)
            }
            "prod" => return self.binary(pos, ExprKind::Sum),
            "times" => return self.binary(pos, ExprKind::Times),
            "wedge" => return self.binary(pos, ExprKind::Wedge),
            other => return Err(ParseError { pos, msg: format!("unknown cd-type constructor '{other}'") }),
        };
        self.expect(")")?;
        Ok(Expr { kind, pos })
    }

    fn basis(&mut self) -> Result<BasisKind, ParseError> {
        let (name, pos) = self.ident()?;
        let with_prime = |p: &mut Parser, make: fn(Prime) -> BasisKind| -> Result<BasisKind, ParseError> {
            p.expect("(")?;
            let q = p.prime()?;
            p.expect(")")?;
            Ok(make(q))
        };
        match name.as_str() {
            "Q" => Ok(BasisKind::Q),
            "Zp" => with_prime(self, BasisKind::Zp),
            "Zpinf" => with_prime(self, BasisKind::ZpInf),
            "Zloc" => with_prime(self, BasisKind::Zloc),
            other => Err(ParseError { pos, msg: format!("'{other}' is not in the Bockstein basis (Q, Zp(p), Zpinf(p), Zloc(p))") }),
        }
    }

    fn triple(&mut self) -> Result<ExprKind, ParseError> {
        self.expect_word("S")?;
        self.expect("=")?;
        let s = self.set()?;
        self.expect(",")?;
        self.expect_word("D")?;
        self.expect("=")?;
        let d = self.set()?;
        self.expect(",")?;
        self.expect_word("d")?;
        self.expect("=")?;
        let f = self.dspec()?;
        Ok(ExprKind::Triple { s, d, f })
    }

    fn prime_list(&mut self) -> Result<Vec<Prime>, ParseError> {
        self.expect("{")?;
        let mut out = Vec::new();
        if !self.eat("}") {
            loop {
                out.push(self.prime()?);
                if self.eat("}") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(out)
    }

    fn set(&mut self) -> Result<PrimeSet, ParseError> {
        if let Tok::Ident(w) = self.peek() {
            if w == "all" {
                self.bump();
                if self.eat("-") {
                    return Ok(PrimeSet::cofinite(self.prime_list()?));
                }
                return Ok(PrimeSet::all());
            }
        }
        Ok(PrimeSet::finite(self.prime_list()?))
    }

    fn dspec(&mut self) -> Result<PrimeFn<ExtInt>, ParseError> {
        self.expect("{")?;
        let mut zero = None;
        if matches!(self.peek(), Tok::Ident(w) if w == "zero") {
            self.bump();
            self.expect(":")?;
            zero = Some(self.val()?);
            self.expect(",")?;
        }
        self.expect_word("default")?;
        self.expect(":")?;
        let default = self.val()?;
        let mut exceptions = Vec::new();
        while self.eat(",") {
            let p = self.prime()?;
            self.expect(":")?;
            exceptions.push((p, self.val()?));
        }
        self.expect("}")?;
        Ok(PrimeFn::new(zero.unwrap_or(default), default, exceptions))
    }

    fn group(&mut self) -> Result<GroupExpr, ParseError> {
        let mut parts = vec![self.group_atom()?];
        while self.eat("+") {
            parts.push(self.group_atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { GroupExpr::Sum(parts) })
    }

    fn group_atom(&mut self) -> Result<GroupExpr, ParseError> {
        if self.eat("(") {
            let g = self.group()?;
            self.expect(")")?;
            return Ok(g);
        }
        let (name, pos) = self.ident()?;
        match name.as_str() {
            "Z" if self.eat("/") => {
                let p = self.prime()?;
                if self.eat("^") {
                    let kpos = self.pos();
                    let k = self.number()?;
                    let k = u32::try_from(k).ok().filter(|&k| k >= 1).ok_or(ParseError { pos: kpos, msg: "exponent must be between 1 and 2^32".into() })?;
                    return Ok(if k == 1 { GroupExpr::Zp(p) } else { GroupExpr::Zpk(p, k) });
                }
                Ok(GroupExpr::Zp(p))
            }
            "Z" => Ok(GroupExpr::Z),
            "Q" => Ok(GroupExpr::Q),
            "Zpinf" | "Zinv" => {
                self.expect("(")?;
                let p = self.prime()?;
                self.expect(")")?;
                Ok(if name == "Zpinf" { GroupExpr::ZpInf(p) } else { GroupExpr::Zinv(p) })
            }
            "Zloc" => {
                let set = match self.peek() {
                    Tok::Sym("(") => {
                        self.bump();
                        let s = self.set()?;
                        self.expect(")")?;
                        s
                    }
                    _ => PrimeSet::finite(self.prime_list()?),
                };
                Ok(GroupExpr::Zloc(set))
            }
            "SumAll" => {
                self.expect("(")?;
                let pat = self.pattern()?;
                self.expect(")")?;
                Ok(GroupExpr::SumOver(PrimeSet::all(), pat))
            }
            "SumOver" => {
                self.expect("(")?;
                let set = self.set()?;
                self.expect(",")?;
                let pat = self.pattern()?;
                self.expect(")")?;
                Ok(GroupExpr::SumOver(set, pat))
            }
            other => Err(ParseError { pos, msg: format!("unknown group '{other}'") }),
        }
    }

    fn pattern(&mut self) -> Result<SumPattern, ParseError> {
        match self.ident()? {
            (w, _) if w == "Zp" => Ok(SumPattern::Zp),
            (w, _) if w == "Zpinf" => Ok(SumPattern::ZpInf),
            (w, pos) => Err(ParseError { pos, msg: format!("expected Zp or Zpinf, found '{w}'") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("nat(1) \\/ nat(2) [+] nat(3) [x] nat(4)").unwrap();
        let ExprKind::Wedge(_, rhs) = e.kind else { panic!("wedge binds loosest") };
        let ExprKind::Sum(_, rhs) = rhs.kind else { panic!("sum next") };
        assert!(matches!(rhs.kind, ExprKind::Times(..)));
        let e = parse_expr("nat(1) [+] nat(2) [+] nat(3)").unwrap();
        let ExprKind::Sum(lhs, _) = e.kind else { panic!() };
        assert!(matches!(lhs.kind, ExprKind::Sum(..)), "left associative");
    }

    #[test]
    fn aliases_match_infix() {
        let a = parse_expr("prod(nat(1), nat(2))").unwrap();
        let b = parse_expr("nat(1) [+] nat(2)").unwrap();
        assert_eq!(format!("{:?}", a.kind).replace(char::is_numeric, ""), format!("{:?}", b.kind).replace(char::is_numeric, ""));
    }

    #[test]
    fn rejects_non_basis_and_composites() {
        let e = parse("Phi(Z,3)").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse("Phi(Zp(4),3)").is_err());
        assert!(parse("norm(nat(2)").is_err());
        assert!(parse("nat(2) [+]").is_err());
    }

    #[test]
    fn groups() {
        assert_eq!(parse_group("Z/2^2").unwrap(), GroupExpr::Zpk(Prime::new(2).unwrap(), 2));
        assert_eq!(parse_group("Z/3^1").unwrap(), GroupExpr::Zp(Prime::new(3).unwrap()));
        assert!(matches!(parse_group("Z + Q + Zpinf(5)").unwrap(), GroupExpr::Sum(v) if v.len() == 3));
        assert!(matches!(parse_group("SumOver({2,3}, Zp)").unwrap(), GroupExpr::SumOver(s, SumPattern::Zp) if s.listed().len() == 2));
        assert!(matches!(parse_group("Zloc{2,3}").unwrap(), GroupExpr::Zloc(s) if s.is_finite()));
        assert!(parse_group("Z/6").is_err());
    }

    #[test]
    fn dspec_defaults_zero() {
        let Ast::Type(e) = parse("triple(S=all-{2}, D={}, d={default:-inf, 3:2})").unwrap() else { panic!() };
        let ExprKind::Triple { s, f, .. } = e.kind else { panic!() };
        assert!(!s.is_finite());
        assert_eq!(*f.at_zero(), ExtInt::NegInf);
    }
}
