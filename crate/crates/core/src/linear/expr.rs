use super::{LinearAutomaton, StringFunctionTable};
use crate::error::{Error, Result};
use crate::linalg::Tolerances;
use crate::words::Alphabet;
use std::collections::HashMap;
use std::fmt::Write;
use std::rc::Rc;

#[derive(Debug, PartialEq)]
enum Node {
    Eps,
    Letter(usize),
    /// c·χ_ε
    Const(f64),
    Sum(RationalExpr, RationalExpr),
    Conv(RationalExpr, RationalExpr),
    Plus(RationalExpr),
    Scale(f64, RationalExpr),
}

/// Expression over χ_ε, χ_x and scalars with sum, convolution, iteration and scaling.
/// Subtrees are shared.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalExpr(Rc<Node>);

impl RationalExpr {
    fn node(n: Node) -> Self {
        RationalExpr(Rc::new(n))
    }

    pub fn eps() -> Self {
        Self::node(Node::Eps)
    }

    pub fn letter(x: usize) -> Self {
        Self::node(Node::Letter(x))
    }

    pub fn constant(c: f64) -> Self {
        Self::node(Node::Const(c))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self.0, Node::Const(c) if c == 0.0)
    }

    pub fn sum(a: &RationalExpr, b: &RationalExpr) -> Self {
        match (&*a.0, &*b.0) {
            _ if a.is_zero() => b.clone(),
            _ if b.is_zero() => a.clone(),
            (Node::Const(c), Node::Const(d)) => Self::constant(c + d),
            _ => Self::node(Node::Sum(a.clone(), b.clone())),
        }
    }

    pub fn conv(a: &RationalExpr, b: &RationalExpr) -> Self {
        match (&*a.0, &*b.0) {
            _ if a.is_zero() || b.is_zero() => Self::zero(),
            (Node::Eps, _) => b.clone(),
            (_, Node::Eps) => a.clone(),
            (Node::Const(c), _) => Self::scale(*c, b),
            (_, Node::Const(d)) => Self::scale(*d, a),
            _ => Self::node(Node::Conv(a.clone(), b.clone())),
        }
    }

    pub fn plus(e: &RationalExpr) -> Self {
        if e.is_zero() {
            return Self::zero();
        }
        Self::node(Node::Plus(e.clone()))
    }

    pub fn scale(c: f64, e: &RationalExpr) -> Self {
        match &*e.0 {
            _ if c == 0.0 || e.is_zero() => Self::zero(),
            _ if c == 1.0 => e.clone(),
            Node::Const(d) => Self::constant(c * d),
            Node::Eps => Self::constant(c),
            Node::Scale(d, f) => Self::scale(c * d, f),
            _ => Self::node(Node::Scale(c, e.clone())),
        }
    }

    /// `eps`, `(chi x)`, `(const c)`, `(sum a b)`, `(conv a b)`, `(plus e)`, `(scale c e)`
    pub fn to_sexpr(&self, alphabet: &Alphabet) -> String {
        let mut s = String::new();
        self.write(alphabet, &mut s);
        s
    }

    fn write(&self, a: &Alphabet, s: &mut String) {
        match &*self.0 {
            Node::Eps => s.push_str("eps"),
            Node::Letter(x) => {
                let _ = write!(s, "(chi {})", a.symbol(*x));
            }
            Node::Const(c) => {
                let _ = write!(s, "(const {})", c);
            }
            Node::Sum(l, r) | Node::Conv(l, r) => {
                s.push_str(if matches!(*self.0, Node::Sum(..)) { "(sum " } else { "(conv " });
                l.write(a, s);
                s.push(' ');
                r.write(a, s);
                s.push(')');
            }
            Node::Plus(e) => {
                s.push_str("(plus ");
                e.write(a, s);
                s.push(')');
            }
            Node::Scale(c, e) => {
                let _ = write!(s, "(scale {} ", c);
                e.write(a, s);
                s.push(')');
            }
        }
    }

    /// Parses the s-expression form; nodes are rebuilt verbatim, without folding.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<RationalExpr> {
        let spaced = text.replace('(', " ( ").replace(')', " ) ");
        let tokens: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let e = parse_at(&tokens, &mut pos, alphabet)?;
        if pos != tokens.len() {
            return Err(Error::Schema(format!("trailing tokens after expression at token {}", pos)));
        }
        Ok(e)
    }
}

fn parse_at(t: &[&str], pos: &mut usize, a: &Alphabet) -> Result<RationalExpr> {
    let next = |pos: &mut usize| -> Result<&str> {
        let tok = t
            .get(*pos)
            .copied()
            .ok_or_else(|| Error::Schema("unexpected end of expression".into()))?;
        *pos += 1;
        Ok(tok)
    };
    let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Schema(format!("bad number `{}`", s)));
    let tok = next(pos)?;
    if tok == "eps" {
        return Ok(RationalExpr::eps());
    }
    if tok != "(" {
        return Err(Error::Schema(format!("unexpected token `{}`", tok)));
    }
    let head = next(pos)?;
    let node = match head {
        "chi" => Node::Letter(a.index_of(next(pos)?)?),
        "const" => Node::Const(num(next(pos)?)?),
        "sum" => Node::Sum(parse_at(t, pos, a)?, parse_at(t, pos, a)?),
        "conv" => Node::Conv(parse_at(t, pos, a)?, parse_at(t, pos, a)?),
        "plus" => Node::Plus(parse_at(t, pos, a)?),
        "scale" => {
            let c = num(next(pos)?)?;
            Node::Scale(c, parse_at(t, pos, a)?)
        }
        other => return Err(Error::Schema(format!("unknown operator `{}`", other))),
    };
    if next(pos)? != ")" {
        return Err(Error::Schema(format!("expected `)` after `{}`", head)));
    }
    Ok(RationalExpr::node(node))
}

/// Evaluates on X^{≤depth}; shared subtrees are evaluated once.
pub fn eval_expr(e: &RationalExpr, alphabet: &Alphabet, depth: usize, tol: &Tolerances) -> Result<StringFunctionTable> {
    let mut memo = HashMap::new();
    eval_memo(e, alphabet, depth, tol, &mut memo)
}

fn eval_memo(
    e: &RationalExpr,
    a: &Alphabet,
    depth: usize,
    tol: &Tolerances,
    memo: &mut HashMap<*const Node, StringFunctionTable>,
) -> Result<StringFunctionTable> {
    let key = Rc::as_ptr(&e.0);
    if let Some(t) = memo.get(&key) {
        return Ok(t.clone());
    }
    let t = match &*e.0 {
        Node::Eps => StringFunctionTable::unit(a.clone(), depth),
        Node::Letter(x) => {
            if *x >= a.len() {
                return Err(Error::UnknownSymbol(format!("letter #{}", x)));
            }
            StringFunctionTable::letter(a.clone(), depth, *x)
        }
        Node::Const(c) => StringFunctionTable::unit(a.clone(), depth).scale(*c),
        Node::Sum(l, r) => eval_memo(l, a, depth, tol, memo)?.add(&eval_memo(r, a, depth, tol, memo)?)?,
        Node::Conv(l, r) => eval_memo(l, a, depth, tol, memo)?.conv(&eval_memo(r, a, depth, tol, memo)?)?,
        Node::Plus(f) => {
            let v = eval_memo(f, a, depth, tol, memo)?;
            if v.values()[0].abs() > tol.zero {
                return Err(Error::Invalid(format!("iteration of a function with value {} at ε", v.values()[0])));
            }
            v.iteration(tol.zero)?
        }
        Node::Scale(c, f) => eval_memo(f, a, depth, tol, memo)?.scale(*c),
    };
    memo.insert(key, t.clone());
    Ok(t)
}

/// Solves (E_ε − A)B = λχ_ε with a_ij = Σ_x L^x_ij χ_x by eliminating the last unknown first,
/// b_k = (χ_ε + a_kk⁺)(c_k + Σ_{j<k} a_kj b_j), and returns Σ ξ⁰_i b_i.
pub fn la_to_rational_expr(l: &LinearAutomaton) -> RationalExpr {
    let n = l.dim();
    let m = l.inputs().len();
    let mut a: Vec<Vec<RationalExpr>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..m).fold(RationalExpr::zero(), |acc, x| {
                        RationalExpr::sum(&acc, &RationalExpr::scale(l.trans(x)[(i, j)], &RationalExpr::letter(x)))
                    })
                })
                .collect()
        })
        .collect();
    let mut c: Vec<RationalExpr> = l.lambda().iter().map(|&v| RationalExpr::constant(v)).collect();
    let mut stars = vec![RationalExpr::zero(); n];
    for k in (0..n).rev() {
        let star = RationalExpr::sum(&RationalExpr::eps(), &RationalExpr::plus(&a[k][k]));
        for i in 0..k {
            if a[i][k].is_zero() {
                continue;
            }
            let lead = RationalExpr::conv(&a[i][k], &star);
            for j in 0..k {
                a[i][j] = RationalExpr::sum(&a[i][j], &RationalExpr::conv(&lead, &a[k][j]));
            }
            c[i] = RationalExpr::sum(&c[i], &RationalExpr::conv(&lead, &c[k]));
        }
        stars[k] = star;
    }
    let mut b: Vec<RationalExpr> = Vec::with_capacity(n);
    for k in 0..n {
        let rhs = (0..k).fold(c[k].clone(), |acc, j| RationalExpr::sum(&acc, &RationalExpr::conv(&a[k][j], &b[j])));
        b.push(RationalExpr::conv(&stars[k], &rhs));
    }
    (0..n).fold(RationalExpr::zero(), |acc, i| {
        RationalExpr::sum(&acc, &RationalExpr::scale(l.initial()[i], &b[i]))
    })
}
