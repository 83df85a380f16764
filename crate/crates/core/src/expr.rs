//! A finitely generated fragment of C∞(ℝⁿ, ℝ).
//!
//! Expressions are built from the coordinate projections `x1..xn`, rational
//! constants, `+ - *`, the primitives `exp sin cos atan`, and an explicit
//! composition node `{h}(g1, ..., gk)`. Every expression denotes a total
//! smooth function, so there is no division in the grammar.
//!
//! Text syntax:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | primary
//! primary := number | 'x' digits | prim '(' expr ')' | '(' expr ')'
//!          | '{' expr '}' '(' expr (',' expr)* ')'
//! number  := digits ('.' digits)? ('/' digits)?
//! ```
//!
//! Inside `{h}` the variables refer to the arguments of the composition, so
//! `{x1 * x2}(sin(x1), x3)` has arity 3.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{contract, Error, Result};
use crate::field::{Rational, RealApprox};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Primitive {
    Exp,
    Sin,
    Cos,
    Atan,
}

impl Primitive {
    pub const ALL: [Primitive; 4] = [Primitive::Exp, Primitive::Sin, Primitive::Cos, Primitive::Atan];

    pub fn name(self) -> &'static str {
        match self {
            Primitive::Exp => "exp",
            Primitive::Sin => "sin",
            Primitive::Cos => "cos",
            Primitive::Atan => "atan",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Primitive::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn apply(self, x: f64) -> f64 {
        match self {
            Primitive::Exp => x.exp(),
            Primitive::Sin => x.sin(),
            Primitive::Cos => x.cos(),
            Primitive::Atan => x.atan(),
        }
    }

    /// Primitives whose range is bounded.
    fn is_bounded(self) -> bool {
        !matches!(self, Primitive::Exp)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// Zero-based coordinate index: `Var(0)` is `x1`.
    Var(usize),
    Const(Rational),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Apply(Primitive, Box<Node>),
    /// `outer ∘ (inner₁, …, innerₖ)` where `outer` has arity `k`.
    Compose {
        outer: Box<SmoothExpr>,
        inner: Vec<Node>,
    },
}

/// A smooth function ℝⁿ → ℝ with a declared arity `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothExpr {
    arity: usize,
    root: Node,
}

impl SmoothExpr {
    /// Wraps a syntax tree, checking every structural invariant.
    pub fn new(arity: usize, root: Node) -> Result<Self> {
        let expr = SmoothExpr { arity, root };
        expr.check_invariants()?;
        Ok(expr)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn var(arity: usize, index: usize) -> Result<Self> {
        projection(arity, index + 1)
    }

    pub fn constant(arity: usize, value: Rational) -> Result<Self> {
        SmoothExpr::new(arity, Node::Const(value))
    }

    pub fn check_invariants(&self) -> Result<()> {
        if self.arity == 0 {
            return Err(contract("arity must be at least 1"));
        }
        check_node(&self.root, self.arity)
    }

    /// Height of the syntax tree; leaves have depth 0.
    pub fn depth(&self) -> usize {
        node_depth(&self.root)
    }

    pub fn eval(&self, point: &[RealApprox]) -> Result<RealApprox> {
        if point.len() != self.arity {
            return Err(contract(format!(
                "expression of arity {} evaluated at a point of dimension {}",
                self.arity,
                point.len()
            )));
        }
        let raw: Vec<f64> = point.iter().map(|x| x.value()).collect();
        eval_node(&self.root, &raw).and_then(RealApprox::new)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).parse_top(None)
    }

    /// Parses with an explicit arity, which may exceed the largest variable
    /// index that occurs.
    pub fn parse_with_arity(text: &str, arity: usize) -> Result<Self> {
        Parser::new(text).parse_top(Some(arity))
    }
}

fn check_node(node: &Node, arity: usize) -> Result<()> {
    match node {
        Node::Var(k) if *k >= arity => Err(contract(format!("variable x{} exceeds declared arity {arity}", k + 1))),
        Node::Var(_) | Node::Const(_) => Ok(()),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) => {
            check_node(a, arity)?;
            check_node(b, arity)
        }
        Node::Neg(a) | Node::Apply(_, a) => check_node(a, arity),
        Node::Compose { outer, inner } => {
            outer.check_invariants()?;
            if outer.arity != inner.len() {
                return Err(contract(format!(
                    "composition of an arity-{} function with {} arguments",
                    outer.arity,
                    inner.len()
                )));
            }
            inner.iter().try_for_each(|g| check_node(g, arity))
        }
    }
}

fn node_depth(node: &Node) -> usize {
    match node {
        Node::Var(_) | Node::Const(_) => 0,
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) => 1 + node_depth(a).max(node_depth(b)),
        Node::Neg(a) | Node::Apply(_, a) => 1 + node_depth(a),
        Node::Compose { outer, inner } => 1 + inner.iter().map(node_depth).fold(outer.depth(), usize::max),
    }
}

fn finite(value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain(format!("evaluation left the finite reals ({value})")))
    }
}

fn eval_node(node: &Node, point: &[f64]) -> Result<f64> {
    let value = match node {
        Node::Var(k) => return Ok(point[*k]),
        Node::Const(c) => c.to_f64(),
        Node::Add(a, b) => eval_node(a, point)? + eval_node(b, point)?,
        Node::Sub(a, b) => eval_node(a, point)? - eval_node(b, point)?,
        Node::Mul(a, b) => eval_node(a, point)? * eval_node(b, point)?,
        Node::Neg(a) => -eval_node(a, point)?,
        Node::Apply(p, a) => p.apply(eval_node(a, point)?),
        Node::Compose { outer, inner } => {
            let args = inner.iter().map(|g| eval_node(g, point)).collect::<Result<Vec<_>>>()?;
            eval_node(&outer.root, &args)?
        }
    };
    finite(value)
}

/// The coordinate projection `πₖ : ℝⁿ → ℝ`, with `k` one-based.
pub fn projection(arity: usize, k: usize) -> Result<SmoothExpr> {
    if k == 0 || k > arity {
        return Err(contract(format!("projection index {k} outside 1..={arity}")));
    }
    Ok(SmoothExpr { arity, root: Node::Var(k - 1) })
}

/// Builds `h ∘ (g₁, …, gₙ)`.
pub fn compose(outer: &SmoothExpr, inner: &[SmoothExpr]) -> Result<SmoothExpr> {
    if inner.len() != outer.arity {
        return Err(contract(format!(
            "cannot compose an arity-{} function with {} functions",
            outer.arity,
            inner.len()
        )));
    }
    let arity = inner[0].arity;
    if let Some(g) = inner.iter().find(|g| g.arity != arity) {
        return Err(contract(format!("inner functions have mixed arities {arity} and {}", g.arity)));
    }
    Ok(SmoothExpr {
        arity,
        root: Node::Compose { outer: Box::new(outer.clone()), inner: inner.iter().map(|g| g.root.clone()).collect() },
    })
}

/// Deterministic random expression of the given arity and depth at most
/// `depth`.
pub fn random_expr(arity: usize, depth: usize, seed: u64) -> Result<SmoothExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_expr_with(&mut rng, arity, depth)
}

/// Same as [`random_expr`] but drawing from a caller-owned generator.
///
/// `exp` is only ever applied to the output of a bounded primitive, so the
/// generated functions grow at most polynomially and stay finite on
/// moderate inputs.
pub fn random_expr_with<R: Rng + ?Sized>(rng: &mut R, arity: usize, depth: usize) -> Result<SmoothExpr> {
    if arity == 0 {
        return Err(contract("arity must be at least 1"));
    }
    Ok(SmoothExpr { arity, root: random_node(rng, arity, depth) })
}

fn random_leaf<R: Rng + ?Sized>(rng: &mut R, arity: usize) -> Node {
    if rng.gen_bool(0.7) {
        Node::Var(rng.gen_range(0..arity))
    } else {
        let numerator = rng.gen_range(-4i64..=4);
        let denominator = [1i64, 2, 3, 4][rng.gen_range(0..4)];
        Node::Const(Rational::new(numerator, denominator).expect("nonzero denominator"))
    }
}

fn random_node<R: Rng + ?Sized>(rng: &mut R, arity: usize, depth: usize) -> Node {
    if depth == 0 {
        return random_leaf(rng, arity);
    }
    let sub = depth - 1;
    match rng.gen_range(0..20) {
        0..=1 => random_leaf(rng, arity),
        2..=4 => Node::Add(Box::new(random_node(rng, arity, sub)), Box::new(random_node(rng, arity, sub))),
        5..=6 => Node::Sub(Box::new(random_node(rng, arity, sub)), Box::new(random_node(rng, arity, sub))),
        7..=9 => Node::Mul(Box::new(random_node(rng, arity, sub)), Box::new(random_node(rng, arity, sub))),
        10 => Node::Neg(Box::new(random_node(rng, arity, sub))),
        11..=15 => {
            let bounded = [Primitive::Sin, Primitive::Cos, Primitive::Atan];
            let prim = bounded[rng.gen_range(0..3)];
            Node::Apply(prim, Box::new(random_node(rng, arity, sub)))
        }
        16..=17 if depth >= 2 => {
            let bounded = [Primitive::Sin, Primitive::Cos, Primitive::Atan];
            let inner = bounded[rng.gen_range(0..3)];
            debug_assert!(inner.is_bounded());
            Node::Apply(Primitive::Exp, Box::new(Node::Apply(inner, Box::new(random_node(rng, arity, depth - 2)))))
        }
        16..=17 => Node::Apply(Primitive::Sin, Box::new(random_leaf(rng, arity))),
        _ => {
            let outer_arity = rng.gen_range(1..=2);
            let outer = SmoothExpr { arity: outer_arity, root: random_node(rng, outer_arity, sub) };
            let inner = (0..outer_arity).map(|_| random_node(rng, arity, sub)).collect();
            Node::Compose { outer: Box::new(outer), inner }
        }
    }
}

impl fmt::Display for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(&self.root, f)
    }
}

fn write_node(node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match node {
        Node::Var(k) => write!(f, "x{}", k + 1),
        Node::Const(c) => write!(f, "{c}"),
        Node::Add(a, b) => write_binary(f, a, "+", b),
        Node::Sub(a, b) => write_binary(f, a, "-", b),
        Node::Mul(a, b) => write_binary(f, a, "*", b),
        Node::Neg(a) => {
            f.write_str("-(")?;
            write_node(a, f)?;
            f.write_str(")")
        }
        Node::Apply(p, a) => {
            write!(f, "{}(", p.name())?;
            write_node(a, f)?;
            f.write_str(")")
        }
        Node::Compose { outer, inner } => {
            write!(f, "{{{outer}}}(")?;
            for (i, g) in inner.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_node(g, f)?;
            }
            f.write_str(")")
        }
    }
}

fn write_binary(f: &mut fmt::Formatter<'_>, a: &Node, op: &str, b: &Node) -> fmt::Result {
    f.write_str("(")?;
    write_node(a, f)?;
    write!(f, " {op} ")?;
    write_node(b, f)?;
    f.write_str(")")
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, bytes: text.as_bytes(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let consumed = &self.text[..self.pos.min(self.text.len())];
        let line = consumed.matches('\n').count() + 1;
        let column = consumed.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn parse_top(mut self, arity: Option<usize>) -> Result<SmoothExpr> {
        let root = self.parse_expr()?;
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        let used = max_var(&root).map_or(1, |k| k + 1);
        let arity = match arity {
            Some(a) if a < used => return Err(contract(format!("expression uses x{used} but arity is {a}"))),
            Some(a) => a,
            None => used,
        };
        SmoothExpr::new(arity, root)
    }

    fn parse_expr(&mut self) -> Result<Node> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Node::Add(Box::new(lhs), Box::new(self.parse_term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Node::Sub(Box::new(lhs), Box::new(self.parse_term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Node> {
        let mut lhs = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Node::Mul(Box::new(lhs), Box::new(self.parse_unary()?));
                }
                Some(b'/') => return Err(self.error("division is not a smooth operation")),
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Node> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                let value = self.parse_number()?;
                return Ok(Node::Const(-&value));
            }
            return Ok(Node::Neg(Box::new(self.parse_unary()?)));
        }
        self.parse_primary()
    }

    fn parse_number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.bytes.len() && p.bytes[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos > s
        };
        digits(self);
        let mut value: Rational = self.text[start..self.pos].parse().map_err(|_| self.error("bad integer literal"))?;
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            if !digits(self) {
                return Err(self.error("expected digits after '.'"));
            }
            let frac = &self.text[frac_start..self.pos];
            let scale = num::BigInt::from(10u32).pow(frac.len() as u32);
            let frac_value = Rational::new(frac.parse::<num::BigInt>().map_err(|_| self.error("bad decimal"))?, scale)?;
            value = &value + &frac_value;
        }
        if self.bytes.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den_start = self.pos;
            if !digits(self) {
                return Err(self.error("division is not a smooth operation"));
            }
            let denominator: Rational =
                self.text[den_start..self.pos].parse().map_err(|_| self.error("bad denominator"))?;
            value = &value * &denominator.recip().map_err(|_| self.error("zero denominator"))?;
        }
        Ok(value)
    }

    fn parse_primary(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => Ok(Node::Const(self.parse_number()?)),
            Some(b'(') => {
                self.pos += 1;
                let node = self.parse_expr()?;
                self.expect(b')')?;
                Ok(node)
            }
            Some(b'{') => {
                self.pos += 1;
                let outer_root = self.parse_expr()?;
                self.expect(b'}')?;
                self.expect(b'(')?;
                let mut inner = vec![self.parse_expr()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    inner.push(self.parse_expr()?);
                }
                self.expect(b')')?;
                if let Some(k) = max_var(&outer_root).filter(|&k| k >= inner.len()) {
                    return Err(self.error(format!(
                        "composed function uses x{} but only {} arguments are given",
                        k + 1,
                        inner.len()
                    )));
                }
                let outer = SmoothExpr::new(inner.len(), outer_root)?;
                Ok(Node::Compose { outer: Box::new(outer), inner })
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let ident = &self.text[start..self.pos];
                if let Some(prim) = Primitive::from_name(ident) {
                    self.expect(b'(')?;
                    let arg = self.parse_expr()?;
                    self.expect(b')')?;
                    return Ok(Node::Apply(prim, Box::new(arg)));
                }
                match ident.strip_prefix('x').map(str::parse::<usize>) {
                    Some(Ok(k)) if k >= 1 => Ok(Node::Var(k - 1)),
                    _ => {
                        self.pos = start;
                        Err(self.error(format!("unknown identifier {ident:?}")))
                    }
                }
            }
            Some(b'/') => Err(self.error("division is not a smooth operation")),
            Some(other) => Err(self.error(format!("unexpected character '{}'", other as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn max_var(node: &Node) -> Option<usize> {
    match node {
        Node::Var(k) => Some(*k),
        Node::Const(_) => None,
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) => max_var(a).max(max_var(b)),
        Node::Neg(a) | Node::Apply(_, a) => max_var(a),
        Node::Compose { inner, .. } => inner.iter().filter_map(max_var).max(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn r(v: f64) -> RealApprox {
        RealApprox::new(v).unwrap()
    }

    fn at(f: &SmoothExpr, p: &[f64]) -> f64 {
        let p: Vec<_> = p.iter().copied().map(r).collect();
        f.eval(&p).unwrap().value()
    }

    #[test]
    fn eval_examples() {
        let x1 = SmoothExpr::parse("x1").unwrap();
        assert_eq!(at(&x1, &[3.5]), 3.5);
        let f = SmoothExpr::parse("sin(x1) + x2").unwrap();
        assert_eq!(at(&f, &[0.0, 1.0]), 1.0);
        let g = SmoothExpr::parse("exp(x1 * x1)").unwrap();
        assert!((at(&g, &[2.0]) - 54.598_150_033_144_236).abs() < 1e-12 * 54.6);
    }

    #[test]
    fn eval_arity_mismatch() {
        let f = SmoothExpr::parse("x1 + x2").unwrap();
        assert!(matches!(f.eval(&[r(1.0)]), Err(Error::Contract(_))));
    }

    #[test]
    fn compose_examples() {
        let g = SmoothExpr::parse("cos(x1) * x1").unwrap();
        let id = projection(1, 1).unwrap();
        let c = compose(&id, std::slice::from_ref(&g)).unwrap();
        for p in [-1.3, 0.0, 2.2] {
            assert_eq!(at(&c, &[p]), at(&g, &[p]));
        }

        let exp = SmoothExpr::parse("exp(x1)").unwrap();
        let sq = SmoothExpr::parse("x1 * x1").unwrap();
        let c = compose(&exp, &[sq]).unwrap();
        assert!((at(&c, &[1.0]) - std::f64::consts::E).abs() < 1e-12);

        let sum = SmoothExpr::parse("x1 + x2").unwrap();
        let c = compose(&sum, &[projection(1, 1).unwrap(), projection(1, 1).unwrap()]).unwrap();
        assert_eq!(at(&c, &[3.0]), 6.0);
    }

    #[test]
    fn compose_arity_errors() {
        let sum = SmoothExpr::parse("x1 + x2").unwrap();
        let x1 = projection(1, 1).unwrap();
        assert!(compose(&sum, std::slice::from_ref(&x1)).is_err());
        let y = projection(2, 2).unwrap();
        assert!(compose(&sum, &[x1, y]).is_err());
    }

    #[test]
    fn projections() {
        let p = projection(3, 2).unwrap();
        assert_eq!(at(&p, &[7.0, -0.25, 9.0]), -0.25);
        assert_eq!(at(&projection(1, 1).unwrap(), &[4.5]), 4.5);
        assert!(projection(2, 0).is_err());
        assert!(projection(2, 3).is_err());

        let g1 = SmoothExpr::parse("atan(x1)").unwrap();
        let g2 = SmoothExpr::parse("exp(x1)").unwrap();
        let c = compose(&projection(2, 1).unwrap(), &[g1.clone(), g2]).unwrap();
        assert_eq!(at(&c, &[0.3]), at(&g1, &[0.3]));
    }

    #[test]
    fn depth_zero_is_leaf() {
        for seed in 0..50 {
            let e = random_expr(1, 0, seed).unwrap();
            assert!(matches!(e.root(), Node::Var(0) | Node::Const(_)));
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_expr(3, 5, 42).unwrap(), random_expr(3, 5, 42).unwrap());
    }

    #[test]
    fn random_trees_are_well_formed() {
        for seed in 0..10_000u64 {
            let arity = 1 + (seed % 4) as usize;
            let depth = (seed % 6) as usize;
            let e = random_expr(arity, depth, seed).unwrap();
            e.check_invariants().unwrap();
            assert!(e.depth() <= depth);
            assert_eq!(e.arity(), arity);
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        match SmoothExpr::parse("x1 + / x2") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(SmoothExpr::parse("x1 / x2").is_err());
        assert!(SmoothExpr::parse("log(x1)").is_err());
        assert!(SmoothExpr::parse("sin(x1").is_err());
        assert!(SmoothExpr::parse("x0").is_err());
        assert!(SmoothExpr::parse("{x3}(x1, x2)").is_err());
        assert!(SmoothExpr::parse_with_arity("x3", 2).is_err());
    }

    #[test]
    fn parse_literals_and_composition() {
        let f = SmoothExpr::parse("0.5 * x1 + 3/4").unwrap();
        assert_eq!(at(&f, &[2.0]), 1.75);
        let g = SmoothExpr::parse("{x1 * x2}(sin(x1), x3)").unwrap();
        assert_eq!(g.arity(), 3);
        let v = at(&g, &[1.0, 0.0, 2.0]);
        assert_eq!(v, 1f64.sin() * 2.0);
        assert_eq!(SmoothExpr::parse_with_arity("x1", 4).unwrap().arity(), 4);
    }

    proptest! {
        #[test]
        fn display_reparses(seed in any::<u64>(), arity in 1usize..4, depth in 0usize..6) {
            let e = random_expr(arity, depth, seed).unwrap();
            let back = SmoothExpr::parse_with_arity(&e.to_string(), arity).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn random_exprs_are_total(seed in any::<u64>(), arity in 1usize..5, depth in 0usize..5,
                                  point in proptest::collection::vec(-2.0f64..2.0, 4)) {
            let e = random_expr(arity, depth, seed).unwrap();
            let p: Vec<_> = point[..arity].iter().copied().map(r).collect();
            prop_assert!(e.eval(&p).is_ok());
        }

        #[test]
        fn composition_coherence(seed in any::<u64>(), m in 1usize..4, point in proptest::collection::vec(-2.0f64..2.0, 3)) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=3);
            let h = random_expr_with(&mut rng, n, 3).unwrap();
            let gs: Vec<_> = (0..n).map(|_| random_expr_with(&mut rng, m, 3).unwrap()).collect();
            let p: Vec<_> = point[..m].iter().copied().map(r).collect();
            let inner: Vec<_> = gs.iter().map(|g| g.eval(&p).unwrap()).collect();
            let lhs = compose(&h, &gs).unwrap().eval(&p).unwrap().value();
            let rhs = h.eval(&inner).unwrap().value();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
        }
    }
}
