//! Evaluation of parsed expressions. cd-type arithmetic runs in the
//! extended class so that `conj` and `[x]` may leave the positive part;
//! queries that need a positive type say so.

use std::fmt;

use cohodim::cdtype::{CdError, CdType, Decomposition, ExtCdType};
use cohodim::dimension::{dim, test_space, DimError};
use cohodim::groups::{sigma_of, BocksteinFamily, GroupError};
use cohodim::prime_base::{ExtInt, ExtNat};
use serde_json::{json, Value as Json};

use crate::parse::{Ast, Expr, ExprKind, Query};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "evaluation error at {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for EvalError {}

fn at<E: fmt::Display>(pos: usize) -> impl Fn(E) -> EvalError {
    move |e| EvalError { pos, msg: e.to_string() }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Type(ExtCdType),
    Number(ExtInt),
    Bool(bool),
    Family(BocksteinFamily),
    Decomposition(Decomposition),
    Phi(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Type(t) => match t.clone().positive() {
                Ok(c) => c.fmt(f),
                Err(_) => t.fmt(f),
            },
            Value::Number(n) => n.fmt(f),
            Value::Bool(b) => b.fmt(f),
            Value::Family(s) => s.fmt(f),
            Value::Decomposition(d) => d.fmt(f),
            Value::Phi(s) => f.write_str(s),
        }
    }
}

impl Value {
    pub fn to_json(&self) -> Json {
        match self {
            Value::Type(t) => match t.clone().positive() {
                Ok(c) => serde_json::to_value(&c),
                Err(_) => serde_json::to_value(t),
            }
            .expect("cd-types serialize"),
            Value::Number(n) => json!({ "kind": "number", "value": n }),
            Value::Bool(b) => json!({ "kind": "bool", "value": b }),
            Value::Family(s) => json!({ "kind": "sigma", "value": s.to_string() }),
            Value::Decomposition(d) => json!({ "kind": "decomposition", "value": d.to_string() }),
            Value::Phi(s) => json!({ "kind": "phi", "value": s }),
        }
    }
}

pub fn eval(ast: &Ast) -> Result<Value, EvalError> {
    match ast {
        Ast::Type(e) => Ok(Value::Type(eval_expr(e)?)),
        Ast::Query(q) => eval_query(q),
    }
}

fn positive(e: &Expr) -> Result<CdType, EvalError> {
    eval_expr(e)?.positive().map_err(at(e.pos))
}

fn eval_query(q: &Query) -> Result<Value, EvalError> {
    Ok(match q {
        Query::Norm(e) => Value::Number(eval_expr(e)?.norm()),
        Query::Inorm(e) => Value::Number(eval_expr(e)?.inferior_norm()),
        Query::Dim(e, g) => {
            let t = positive(e)?;
            Value::Number(nat_to_int(dim(&t, g).map_err(at(e.pos))?))
        }
        Query::Sigma(g) => Value::Family(sigma_of(g).map_err(|e: GroupError| EvalError { pos: 0, msg: e.to_string() })?),
        Query::Decompose(e) => Value::Decomposition(positive(e)?.decompose().map_err(at(e.pos))?),
        Query::Leq(a, b) => Value::Bool(eval_expr(a)?.leq(&eval_expr(b)?)),
        Query::Phi(e) => Value::Phi(eval_expr(e)?.to_phi().render()),
    })
}

fn nat_to_int(n: ExtNat) -> ExtInt {
    n.to_ext_int().unwrap_or(ExtInt::PosInf)
}

pub fn eval_expr(e: &Expr) -> Result<ExtCdType, EvalError> {
    let err = at::<CdError>(e.pos);
    Ok(match &e.kind {
        ExprKind::Phi(kind, n) => CdType::phi_basis(*kind, *n).map_err(&err)?.into_ext(),
        ExprKind::Nat(n) => CdType::nat(*n).into_ext(),
        ExprKind::Triple { s, d, f } => ExtCdType::new(s.clone(), d.clone(), f.clone()).map_err(&err)?,
        ExprKind::Conj(a) => eval_expr(a)?.conjugate().map_err(&err)?,
        ExprKind::Pow(a, k) => eval_expr(a)?.scale(*k).map_err(&err)?,
        ExprKind::Test(g, n) => test_space(g, *n).map_err(at::<DimError>(e.pos))?.into_ext(),
        ExprKind::Sum(a, b) => eval_expr(a)?.sum(&eval_expr(b)?).map_err(&err)?,
        ExprKind::Times(a, b) => eval_expr(a)?.times(&eval_expr(b)?).map_err(&err)?,
        ExprKind::Wedge(a, b) => eval_expr(a)?.wedge(&eval_expr(b)?).map_err(&err)?,
    })
}

/// Parses and evaluates in one step.
pub fn run(text: &str) -> Result<Value, Box<dyn std::error::Error>> {
    Ok(eval(&crate::parse::parse(text)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(text: &str) -> String {
        run(text).unwrap().to_string()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(show("norm(Phi(Zp(2),3) [+] Phi(Q,2))"), "4");
        assert_eq!(show("dim(nat(3), Z/2^2)"), "3");
        assert_eq!(show("sigma(Zinv(3))"), "Zloc(p) for all p ≠ 3");
        assert_eq!(show("decompose(triple(S={2}, D={2}, d={zero:1, default:1, 2:2}))"), "Phi(Zp(2),2) ∨ 1-types");
        assert_eq!(show("inorm(nat(5))"), "5");
    }

    #[test]
    fn norm_of_sum_matches_direct_construction() {
        // the sum built by hand: S = all, D = {2}, d = 1 + 2 at zero, 3 + 1 at 2
        let direct = show("norm(triple(S=all, D={2}, d={zero:3, default:2, 2:4}))");
        assert_eq!(direct, show("norm(Phi(Zp(2),3) [+] Phi(Q,2))"));
    }

    #[test]
    fn extended_values_render() {
        assert_eq!(show("conj(nat(2))"), "triple(S={}, D={}, d={zero:-2, default:-2})");
        assert!(run("dim(conj(nat(2)), Q)").is_err());
        assert_eq!(show("leq(nat(1), Phi(Q,3))"), "true");
        assert_eq!(show("pow(Phi(Zpinf(2),2), 2)"), show("Phi(Zpinf(2),3) \\/ nat(2)"));
    }

    #[test]
    fn rendered_types_parse_back() {
        use cohodim::oracle::Universe;
        use cohodim::prime_base::Prime;
        let u = Universe::new(vec![Prime::new(2).unwrap(), Prime::new(3).unwrap()], 3);
        let mut types: Vec<ExtCdType> = u.enumerate_types().into_iter().map(CdType::into_ext).collect();
        types.extend(Universe::new(vec![Prime::new(2).unwrap()], 2).extended().enumerate_ext_types());
        for t in types {
            let text = Value::Type(t.clone()).to_string();
            match run(&text).unwrap() {
                Value::Type(back) => assert_eq!(back, t, "{text}"),
                other => panic!("{text} gave {other}"),
            }
        }
    }

    #[test]
    fn bad_triples_report_position() {
        let e = run("nat(1) [+] triple(S={}, D={2}, d={default:1})").unwrap_err();
        assert!(e.to_string().contains("at 11"), "{e}");
    }
}
